package shapes;

public class Circle extends AbstractShape {
    private double radius;

    public Circle(Point centre, double radius) {
        super(centre);
        this.radius = radius;
    }

    @Override
    public double area() {
        return Math.PI * radius * radius;
    }

    @Override
    public Shape scaled(double factor) {
        return new Circle(origin, radius * factor);
    }
}
