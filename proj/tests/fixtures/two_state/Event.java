enum Event { STOP, ACK }
