/*
 * The MIT License (MIT) Copyright (c) 2020-2022 artipie.com
 */
package com.artipie.docker.http;

import com.artipie.http.Response;
import com.artipie.http.Slice;
import org.cactoos.text.TextOf;

/**
 * Base entity in Docker HTTP API.
 *
 * @since 0.1
 */
public final class BaseEntity implements Slice {

    /**
     * Header value of the API version.
     */
    private static final String VERSION = "registry/2.0";

    @Override
    public Response response(final String line, final Iterable headers, final Object body) {
        final String version = new TextOf(BaseEntity.VERSION).asString();
        return connection -> { };
    }
}
