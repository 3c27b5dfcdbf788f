package org.apache.maven.plugin.surefire.booterclient;

public abstract class ForkConfiguration {
    public abstract String getWorkingDirectory();

    public abstract boolean isDebug();

    public abstract String getDebugLine();
}
