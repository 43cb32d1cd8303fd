class State {
}

class Idle extends State {
  public void start() {
    Running.Instance().activate();
    Running.Instance().activate();
  }
}

class Running extends State {
}
