/*
 * The MIT License (MIT) Copyright (c) 2020-2022 artipie.com
 */
package com.artipie.docker;

import org.example.StringContainer;
import org.hamcrest.MatcherAssert;
import org.junit.jupiter.api.Test;

/**
 * Tests for digest strings.
 */
class DigestTest {

    @Test
    void parsesAlgorithm() {
        final StringContainer digest = new StringContainer("sha256:0123");
        MatcherAssert.assertThat(
            "Algorithm is parsed",
            digest.value().startsWith("sha256")
        );
    }
}
