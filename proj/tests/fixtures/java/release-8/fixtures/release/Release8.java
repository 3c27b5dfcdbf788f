package fixtures.release;

public class Release8 {
    public static int release() {
        return 8;
    }
}
