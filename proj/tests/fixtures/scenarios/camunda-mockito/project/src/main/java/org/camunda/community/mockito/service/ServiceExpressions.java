package org.camunda.community.mockito.service;

import java.util.HashMap;
import java.util.Map;
import org.springframework.context.ApplicationContext;

public class ServiceExpressions {

  private final Map<String, Object> beans = new HashMap<>();

  public ServiceExpressions(ApplicationContext context) {
    beans.put(context.getId(), context.getBean("processEngine"));
  }

  public Object get(String name) {
    return beans.get(name);
  }
}
