package org.cactoos.text;

import org.cactoos.Text;

public final class TextOf implements Text {
    private final String origin;

    public TextOf(String origin) {
        this.origin = origin;
    }

    public String asString() {
        return this.origin;
    }
}
