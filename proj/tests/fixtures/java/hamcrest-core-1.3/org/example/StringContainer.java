package org.example;

public class StringContainer {
    private final String value;

    public StringContainer(String value, boolean trim) {
        this.value = trim ? value.trim() : value;
    }

    public String value() {
        return value;
    }
}
