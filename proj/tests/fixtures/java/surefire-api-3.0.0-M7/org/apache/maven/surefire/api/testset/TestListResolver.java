package org.apache.maven.surefire.api.testset;

public class TestListResolver {
    private final String pattern;

    public TestListResolver(String pattern) {
        this.pattern = pattern;
    }

    public static TestListResolver getWildcard() {
        return new TestListResolver("**");
    }

    public boolean isEmpty() {
        return pattern.length() == 0;
    }

    public String getPluginParameterTest() {
        return pattern;
    }

    public boolean hasIncludedMethodPatterns() {
        return false;
    }
}
