package net.datafaker;

public class Name {
    public String firstName() {
        return "Ada";
    }

    public String lastName() {
        return "Lovelace";
    }
}
