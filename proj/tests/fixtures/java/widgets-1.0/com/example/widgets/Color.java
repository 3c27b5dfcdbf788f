package com.example.widgets;

public enum Color {
    RED, GREEN
}
