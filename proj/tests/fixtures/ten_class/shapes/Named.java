package shapes;

public interface Named {
    String name();
}
