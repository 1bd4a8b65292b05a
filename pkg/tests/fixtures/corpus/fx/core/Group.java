package fx.core;

public class Group extends Item {
    private int members;

    public Group(String key) {
        super(key);
    }

    public String describe() {
        return "group";
    }

    public void add() {
        members = members + 1;
    }
}
