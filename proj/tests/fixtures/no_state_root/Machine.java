class Engine {
  public void start() {
    Motor.Instance().activate();
  }
}

class Motor {
}
