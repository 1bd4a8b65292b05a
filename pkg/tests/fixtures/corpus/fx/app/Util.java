package fx.app;

public class Util {
    public static int clamp(int value, int lo, int hi) {
        if (value < lo) {
            return lo;
        }
        if (value > hi) {
            return hi;
        }
        return value;
    }

    public static boolean even(int value) {
        return value % 2 == 0;
    }
}
