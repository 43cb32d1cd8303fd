class State {
}

class Base extends State {
  public void init() {
    Leaf.Instance().activate();
  }
}

class Leaf extends Base {
}
