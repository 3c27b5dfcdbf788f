package com.example.widgets;

class Internal {
    public void touch() {
    }
}
