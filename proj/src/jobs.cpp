namespace sio {
}
