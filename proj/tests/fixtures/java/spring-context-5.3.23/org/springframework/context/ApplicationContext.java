package org.springframework.context;

public interface ApplicationContext {
    String getId();

    String getApplicationName();

    Object getBean(String name);
}
