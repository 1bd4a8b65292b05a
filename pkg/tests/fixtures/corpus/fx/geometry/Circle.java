package fx.geometry;

/** Circle with a radius. */
public class Circle extends Shape {
    private double radius;

    public Circle(String label, double radius) {
        super(label);
        this.radius = radius;
    }

    public double area() {
        return 3.14159265 * radius * radius;
    }

    public double diameter() {
        return 2.0 * radius;
    }
}
