package fixtures.pair;

public interface Writer {
    void write(int b);
    void flush();
    void close();
}
