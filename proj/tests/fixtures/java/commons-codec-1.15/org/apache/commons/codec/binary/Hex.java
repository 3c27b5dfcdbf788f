package org.apache.commons.codec.binary;

public class Hex {
    public static String encodeHexString(byte[] data) {
        StringBuffer out = new StringBuffer();
        for (int i = 0; i < data.length; i++) {
            out.append(Integer.toHexString(data[i] & 0xff));
        }
        return out.toString();
    }
}
