package fr.spoonlabs.flacoco.core.test.strategies.classloader;

import fr.spoonlabs.flacoco.core.config.FlacocoConfig;
import java.util.ArrayList;
import java.util.List;
import org.apache.maven.surefire.api.testset.TestListResolver;

/** Finds test classes by loading them from the configured class path. */
public class ClassloaderStrategy {

	private final FlacocoConfig config;

	public ClassloaderStrategy(FlacocoConfig config) {
		this.config = config;
	}

	public List<String> findTestClasses() {
		List<String> found = new ArrayList<>();
		TestListResolver resolver = TestListResolver.getInstance();
		if (resolver.isEmpty()) {
			return found;
		}
		found.addAll(config.getTestClasses());
		return found;
	}
}
