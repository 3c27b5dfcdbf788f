package fixtures.release;

public class Release17 {
    public static int release() {
        return 17;
    }
}
