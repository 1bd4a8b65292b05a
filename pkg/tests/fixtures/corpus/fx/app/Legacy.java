package fx.app;

// Old-style holder kept for compatibility.
class Legacy {
    int flags;
    protected String note;

    void toggle() {
        flags = flags == 0 ? 1 : 0;
    }

    protected String note() {
        return note;
    }
}
