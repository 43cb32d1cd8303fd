enum Event { DONE }

class State {
}

class Idle extends State {
  Bus bus;

  public void finish() {
    bus.send(Event.DONE);
    Done.Instance().activate();
  }
}

class Done extends State {
}
