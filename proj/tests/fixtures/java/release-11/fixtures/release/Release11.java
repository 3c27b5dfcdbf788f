package fixtures.release;

public class Release11 {
    public static int release() {
        return 11;
    }
}
