// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/dfb/wire.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace elephant::dfb {

// One end of a duplex, ordered message stream. send() may be called from one
// thread while another blocks in receive().
class Connection {
public:
  virtual ~Connection() = default;
  // A send on a closed connection is dropped.
  virtual void send(const Message &m) = 0;
  // Blocks for the next message; nullopt once the peer has closed and the
  // stream is drained.
  virtual std::optional<Message> receive() = 0;
  virtual void close() = 0;
};

// Pair of connected in-process endpoints. Messages pass through the wire codec.
std::pair<std::unique_ptr<Connection>, std::unique_ptr<Connection>> make_in_process_pair();

struct Endpoint {
  std::string host;
  uint16_t port = 0;
};
// Parses "host:port". Throws Error.
Endpoint parse_endpoint(const std::string &text);

// "N" or "local:N" runs N workers in this process; "tcp:host:port:N" waits for
// N workers to connect to host:port.
struct WorkerSpec {
  bool tcp = false;
  uint32_t count = 1;
  Endpoint listen;
};
WorkerSpec parse_worker_spec(const std::string &text);

// Length-prefixed frames over TCP.
class TcpListener {
public:
  // Throws BindFailure.
  explicit TcpListener(const Endpoint &at);
  ~TcpListener();
  TcpListener(const TcpListener &) = delete;
  TcpListener &operator=(const TcpListener &) = delete;

  uint16_t port() const;
  std::unique_ptr<Connection> accept();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Retries until the deadline while the head is not yet listening.
std::unique_ptr<Connection> tcp_connect(const Endpoint &to, double timeoutSeconds = 10.0);

} // namespace elephant::dfb
