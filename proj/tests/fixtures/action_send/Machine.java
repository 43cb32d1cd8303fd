enum Event { ACK, STOP }

class State {
}

class Running extends State {
  Bus bus;

  public void run(Event ev) {
    switch (ev) {
      case STOP:
        bus.send(ACK);
        Idle.Instance().activate();
        break;
    }
  }
}

class Idle extends State {
}
