package com.example.widgets;

public class Widget {
    public static final long SIZE = 1L;
    private String label;
    private int secret;

    public Widget() {
    }

    public Widget(String label, int width) {
        this.label = label;
    }

    public long count() {
        return secret;
    }

    public void render(long width) {
    }

    public void render(CharSequence text) {
    }

    public final void paint() {
    }

    @Deprecated
    public void legacy() {
    }
}
