class State {
}

class Idle extends State {
}

class Helper {
  public void kick() {
    Idle.Instance().activate();
  }
}
