class State {
}

abstract class Base extends State {
}

class Impl extends Base {
  public void go() {
    Impl.Instance().activate();
  }
}
