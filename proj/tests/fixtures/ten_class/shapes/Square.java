package shapes;

public final class Square extends Polygon {
    public Square(Point corner, double side) {
        super(new Point[] {
            corner,
            corner.translate(new Point(side, 0)),
            corner.translate(new Point(side, side)),
            corner.translate(new Point(0, side))
        });
    }

    public double side() {
        return vertices[0].distance(vertices[1]);
    }
}
