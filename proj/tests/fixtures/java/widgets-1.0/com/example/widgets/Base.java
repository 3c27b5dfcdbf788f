package com.example.widgets;

public abstract class Base {
    public abstract void run();

    protected void helper() {
    }
}
