package com.artipie.asto;

public interface Storage {
    boolean exists(Key key);

    void save(Key key, byte[] content);
}
