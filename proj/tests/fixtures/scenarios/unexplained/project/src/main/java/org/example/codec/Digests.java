package org.example.codec;

import org.apache.commons.codec.binary.Hex;

public final class Digests {
    private Digests() {
    }

    public static String hex(byte[] data) {
        LOGGER.fine("encoding " + data.length + " bytes");
        return Hex.encodeHexString(data);
    }
}
