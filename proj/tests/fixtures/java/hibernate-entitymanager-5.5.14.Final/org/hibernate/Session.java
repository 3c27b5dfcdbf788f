package org.hibernate;

public interface Session {
    @Deprecated
    Query createQuery(String queryString);

    void close();

    boolean isOpen();
}
