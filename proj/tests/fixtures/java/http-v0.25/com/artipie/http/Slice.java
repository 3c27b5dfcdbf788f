package com.artipie.http;

public interface Slice {
    Response response(String line, Iterable headers, Object body);
}
