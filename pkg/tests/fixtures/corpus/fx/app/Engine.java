package fx.app;

import fx.core.Tag;
import fx.geometry.Point;

/** Coordinates tags and points; deliberately does too much. */
public class Engine {
    private Tag tag;
    private Point origin;
    private int steps;

    public int run(int limit) {
        int total = 0;
        for (int i = 0; i < limit; i = i + 1) {
            if (i % 2 == 0) {
                total = total + origin.x;
            } else {
                total = total + origin.y;
            }
        }
        steps = steps + 1;
        return total;
    }

    public String describeTag() {
        if (tag.name == null) {
            return "untagged";
        }
        return tag.name;
    }

    public int weightOrZero(Tag other) {
        if (other == null) {
            return 0;
        }
        return other.weight();
    }

    public void recenter(Point p) {
        if (p.x > 0 || p.y > 0) {
            origin = p;
        }
    }
}
