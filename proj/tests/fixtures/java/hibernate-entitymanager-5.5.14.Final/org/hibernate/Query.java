package org.hibernate;

@Deprecated
public interface Query {
    Query setParameter(String name, Object value);

    Object uniqueResult();
}
