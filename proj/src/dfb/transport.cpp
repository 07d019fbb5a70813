// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/transport.hpp"

#include "elephant/core/error.hpp"

#include <boost/asio.hpp>

#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

namespace elephant::dfb {

namespace asio = boost::asio;
using asio::ip::tcp;

namespace {

struct Channel {
  std::mutex mutex;
  std::condition_variable ready;
  std::deque<std::vector<std::byte>> frames;
  bool closed = false;

  void push(std::vector<std::byte> f) {
    {
      std::lock_guard lock(mutex);
      if (closed) return;
      frames.push_back(std::move(f));
    }
    ready.notify_one();
  }
  std::optional<std::vector<std::byte>> pop() {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return closed || !frames.empty(); });
    if (frames.empty()) return std::nullopt;
    auto f = std::move(frames.front());
    frames.pop_front();
    return f;
  }
  void close() {
    {
      std::lock_guard lock(mutex);
      closed = true;
    }
    ready.notify_all();
  }
};

class InProcessConnection final : public Connection {
public:
  InProcessConnection(std::shared_ptr<Channel> in, std::shared_ptr<Channel> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~InProcessConnection() override { close(); }

  void send(const Message &m) override { out_->push(encode_message(m)); }
  std::optional<Message> receive() override {
    auto f = in_->pop();
    if (!f) return std::nullopt;
    return decode_message(*f);
  }
  // Frames already sent stay readable by the peer.
  void close() override {
    out_->close();
    in_->close();
  }

private:
  std::shared_ptr<Channel> in_, out_;
};

class TcpConnection final : public Connection {
public:
  explicit TcpConnection(tcp::socket socket) : socket_(std::move(socket)) { socket_.set_option(tcp::no_delay(true)); }
  ~TcpConnection() override { close(); }

  void send(const Message &m) override {
    const auto frame = encode_message(m);
    std::lock_guard lock(writeMutex_);
    boost::system::error_code ec;
    asio::write(socket_, asio::buffer(frame.data(), frame.size()), ec);
  }
  std::optional<Message> receive() override {
    boost::system::error_code ec;
    std::vector<std::byte> frame(4);
    asio::read(socket_, asio::buffer(frame.data(), 4), ec);
    if (ec) return std::nullopt;
    uint32_t length;
    std::memcpy(&length, frame.data(), 4);
    frame.resize(4 + std::size_t(length));
    asio::read(socket_, asio::buffer(frame.data() + 4, length), ec);
    if (ec) return std::nullopt;
    return decode_message(frame);
  }
  void close() override {
    boost::system::error_code ec;
    socket_.shutdown(tcp::socket::shutdown_both, ec);
  }

private:
  tcp::socket socket_;
  std::mutex writeMutex_;
};

asio::io_context &io() {
  static asio::io_context ctx;
  return ctx;
}

tcp::endpoint resolve(const Endpoint &e) {
  tcp::resolver resolver(io());
  boost::system::error_code ec;
  auto results = resolver.resolve(e.host, std::to_string(e.port), ec);
  if (ec || results.empty()) throw Error("cannot resolve " + e.host + ": " + ec.message());
  return *results.begin();
}

} // namespace

std::pair<std::unique_ptr<Connection>, std::unique_ptr<Connection>> make_in_process_pair() {
  auto a = std::make_shared<Channel>(), b = std::make_shared<Channel>();
  return {std::make_unique<InProcessConnection>(a, b), std::make_unique<InProcessConnection>(b, a)};
}

Endpoint parse_endpoint(const std::string &text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 == text.size()) throw Error("expected host:port, got '" + text + "'");
  Endpoint e;
  e.host = text.substr(0, colon);
  if (e.host.empty()) e.host = "0.0.0.0";
  try {
    const int port = std::stoi(text.substr(colon + 1));
    if (port < 0 || port > 65535) throw std::out_of_range("port");
    e.port = uint16_t(port);
  } catch (const std::exception &) {
    throw Error("bad port in '" + text + "'");
  }
  return e;
}

WorkerSpec parse_worker_spec(const std::string &text) {
  auto count = [&](const std::string &n) {
    try {
      std::size_t used = 0;
      const long v = std::stol(n, &used);
      if (used != n.size() || v < 1 || v > 4096) throw std::out_of_range("count");
      return uint32_t(v);
    } catch (const std::exception &) {
      throw Error("bad worker count in '" + text + "'");
    }
  };
  WorkerSpec w;
  if (text.rfind("tcp:", 0) == 0) {
    const std::string rest = text.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw Error("expected tcp:host:port:N, got '" + text + "'");
    w.tcp = true;
    w.listen = parse_endpoint(rest.substr(0, colon));
    w.count = count(rest.substr(colon + 1));
    return w;
  }
  w.count = count(text.rfind("local:", 0) == 0 ? text.substr(6) : text);
  return w;
}

struct TcpListener::Impl {
  tcp::acceptor acceptor{io()};
};

TcpListener::TcpListener(const Endpoint &at) : impl_(std::make_unique<Impl>()) {
  boost::system::error_code ec;
  tcp::endpoint ep;
  try {
    ep = resolve(at);
  } catch (const Error &e) {
    throw BindFailure(e.what());
  }
  impl_->acceptor.open(ep.protocol(), ec);
  if (!ec) impl_->acceptor.set_option(tcp::acceptor::reuse_address(true), ec);
  if (!ec) impl_->acceptor.bind(ep, ec);
  if (!ec) impl_->acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) throw BindFailure("cannot listen on " + at.host + ":" + std::to_string(at.port) + ": " + ec.message());
}

TcpListener::~TcpListener() = default;

uint16_t TcpListener::port() const { return impl_->acceptor.local_endpoint().port(); }

std::unique_ptr<Connection> TcpListener::accept() {
  tcp::socket socket(io());
  impl_->acceptor.accept(socket);
  return std::make_unique<TcpConnection>(std::move(socket));
}

std::unique_ptr<Connection> tcp_connect(const Endpoint &to, double timeoutSeconds) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeoutSeconds);
  const tcp::endpoint ep = resolve(to);
  for (;;) {
    tcp::socket socket(io());
    boost::system::error_code ec;
    socket.connect(ep, ec);
    if (!ec) return std::make_unique<TcpConnection>(std::move(socket));
    if (std::chrono::steady_clock::now() > deadline)
      throw Error("cannot connect to " + to.host + ":" + std::to_string(to.port) + ": " + ec.message());
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
}

} // namespace elephant::dfb
