package org.example;

public class StringContainer {
    private final String value;

    public StringContainer(String value) {
        this.value = value;
    }

    public String value() {
        return value;
    }
}
