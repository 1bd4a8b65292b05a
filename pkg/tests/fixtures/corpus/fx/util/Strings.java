package fx.util;

public class Strings {
    public static String orElse(String value, String fallback) {
        return value == null ? fallback : value;
    }

    public static int safeLength(String value) {
        if (value == null) {
            return 0;
        }
        return value.length();
    }
}
