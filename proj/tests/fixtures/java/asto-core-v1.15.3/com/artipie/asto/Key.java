package com.artipie.asto;

public interface Key {
    String string();
}
