package fx.geometry;

/** Base type for drawable shapes. */
public abstract class Shape {
    protected String label;
    private int id;

    public Shape(String label) {
        this.label = label;
    }

    public String label() {
        return label;
    }

    public abstract double area();

    public void rename(String next) {
        if (next != null) {
            label = next;
        }
    }
}
