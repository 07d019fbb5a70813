// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/serve.hpp"

#include "elephant/core/error.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <mutex>

namespace elephant::dfb {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using asio::ip::tcp;

namespace {

struct Outgoing {
  bool text = false;
  bool frame = false;
  std::shared_ptr<const std::vector<uint8_t>> bytes;
};

// Controls travel from the socket thread to the render loop.
class Mailbox {
public:
  void push(ControlMessage m) {
    std::lock_guard lock(mutex_);
    items_.push_back(std::move(m));
  }
  std::deque<ControlMessage> take() {
    std::lock_guard lock(mutex_);
    return std::exchange(items_, {});
  }

private:
  std::mutex mutex_;
  std::deque<ControlMessage> items_;
};

// All members are touched only on the io thread, apart from the atomics.
class Session : public std::enable_shared_from_this<Session> {
public:
  Session(tcp::socket socket, Mailbox &mailbox) : ws_(std::move(socket)), mailbox_(mailbox) {}

  void accept() { ws_.accept(); }
  void start() { do_read(); }

  // Frames of a superseded camera or config are dropped; at most two frames wait.
  void post_frame(std::shared_ptr<const std::vector<uint8_t>> bytes, uint64_t generation,
                  std::shared_ptr<const std::string> stats) {
    asio::post(ws_.get_executor(), [self = shared_from_this(), bytes, generation, stats] {
      if (self->closing_ || generation < self->pendingGeneration_) return;
      self->latestStats_ = stats;
      std::size_t waiting = 0;
      for (const Outgoing &o : self->queue_) waiting += o.frame;
      if (waiting >= 2) {
        // The front entry may be mid-write.
        for (auto it = self->queue_.begin() + (self->writing_ ? 1 : 0); it != self->queue_.end(); ++it)
          if (it->frame) {
            self->queue_.erase(it);
            break;
          }
      }
      self->queue_.push_back(Outgoing{false, true, bytes});
      self->do_write();
    });
  }

  void close_normal() {
    asio::post(ws_.get_executor(), [self = shared_from_this()] { self->close_with(websocket::close_code::normal, ""); });
  }

  bool finished() const { return finished_; }
  uint32_t frames_sent() const { return framesSent_; }

private:
  void do_read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_read(ec); });
  }

  void on_read(beast::error_code ec) {
    if (ec) {
      finish();
      return;
    }
    if (!ws_.got_text()) {
      close_with(websocket::close_code::unknown_data, "control messages are JSON text");
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    ControlMessage c;
    try {
      c = parse_control(text);
    } catch (const ProtocolError &e) {
      close_with(websocket::close_code::policy_error, std::string(e.what()).substr(0, 120));
      return;
    }
    if (c.type == ControlMessage::Type::StatsRequest) {
      const std::string s = latestStats_ ? *latestStats_ : R"({"type":"stats","frameIndex":null})";
      enqueue_text(s);
    } else {
      // Frames rendered before this change never reach the viewer after the ack.
      ++pendingGeneration_;
      std::erase_if(queue_, [&, first = true](const Outgoing &o) mutable {
        const bool inFlight = first && writing_;
        first = false;
        return o.frame && !inFlight;
      });
      mailbox_.push(c);
      enqueue_text(ack_json(c.type, pendingGeneration_));
    }
    do_read();
  }

  void enqueue_text(const std::string &s) {
    queue_.push_back(Outgoing{true, false, std::make_shared<const std::vector<uint8_t>>(s.begin(), s.end())});
    do_write();
  }

  void do_write() {
    if (writing_ || queue_.empty() || closing_) return;
    writing_ = true;
    const Outgoing &o = queue_.front();
    ws_.text(o.text);
    ws_.async_write(asio::buffer(*o.bytes), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->writing_ = false;
      if (self->queue_.front().frame) ++self->framesSent_;
      self->queue_.pop_front();
      if (ec) {
        self->finish();
        return;
      }
      if (self->closeRequested_) {
        self->do_close();
        return;
      }
      self->do_write();
    });
  }

  void close_with(websocket::close_code code, std::string reason) {
    if (closing_ || finished_) return;
    closeReason_ = websocket::close_reason(code, reason);
    closeRequested_ = true;
    if (!writing_) do_close();
  }

  void do_close() {
    closing_ = true;
    queue_.clear();
    ws_.async_close(closeReason_, [self = shared_from_this()](beast::error_code) { self->finish(); });
  }

  void finish() {
    if (finished_) return;
    closing_ = true;
    finished_ = true;
    beast::error_code ec;
    beast::get_lowest_layer(ws_).shutdown(tcp::socket::shutdown_both, ec);
  }

  websocket::stream<tcp::socket> ws_;
  Mailbox &mailbox_;
  beast::flat_buffer buffer_;
  std::deque<Outgoing> queue_;
  bool writing_ = false, closing_ = false, closeRequested_ = false;
  websocket::close_reason closeReason_;
  uint64_t pendingGeneration_ = 0;
  std::shared_ptr<const std::string> latestStats_;
  std::atomic<bool> finished_{false};
  std::atomic<uint32_t> framesSent_{0};
};

} // namespace

ServeSummary serve(const ServeOptions &options, std::vector<std::unique_ptr<Connection>> workers, SceneSource scene,
                   HeadOptions headOptions) {
  asio::io_context ioc;
  tcp::acceptor acceptor(ioc);
  {
    boost::system::error_code ec;
    const auto addr = asio::ip::make_address(options.listen.host == "localhost" ? "127.0.0.1" : options.listen.host, ec);
    const tcp::endpoint ep(addr, options.listen.port);
    if (!ec) acceptor.open(ep.protocol(), ec);
    if (!ec) acceptor.set_option(tcp::acceptor::reuse_address(true), ec);
    if (!ec) acceptor.bind(ep, ec);
    if (!ec) acceptor.listen(1, ec);
    if (ec)
      throw BindFailure("cannot listen on " + options.listen.host + ":" + std::to_string(options.listen.port) + ": " +
                        ec.message());
  }
  if (options.onListening) options.onListening(acceptor.local_endpoint().port());

  Mailbox mailbox;
  tcp::socket socket(ioc);
  acceptor.accept(socket);
  auto session = std::make_shared<Session>(std::move(socket), mailbox);
  session->accept();
  session->start();
  auto guard = asio::make_work_guard(ioc);
  std::thread io([&] { ioc.run(); });

  std::atomic<FrameFormat> format{options.format};
  std::atomic<float> exposure{options.exposure};
  ServeSummary summary;
  std::exception_ptr failure;
  try {
    Head head(std::move(workers), std::move(scene), headOptions, [&](DisplayFrame &&f) {
      auto bytes = std::make_shared<const std::vector<uint8_t>>(make_frame_message(f, format, exposure));
      session->post_frame(bytes, f.generation, std::make_shared<const std::string>(stats_json(f)));
    });
    while (!session->finished() && (options.maxFrames == 0 || summary.framesRendered < options.maxFrames)) {
      for (const ControlMessage &c : mailbox.take()) {
        if (c.type == ControlMessage::Type::Camera) {
          head.set_camera(apply_camera(head.camera(), c.camera));
        } else {
          render::RenderConfig cfg = head.config();
          if (c.config.mode) cfg.mode = *c.config.mode;
          if (c.config.spp) cfg.samplesPerFrame = *c.config.spp;
          if (c.config.maxDepth) cfg.maxPathDepth = *c.config.maxDepth;
          if (c.config.denoise) head.set_denoise(*c.config.denoise);
          if (c.config.format) format = *c.config.format;
          if (c.config.exposure) exposure = *c.config.exposure;
          head.set_config(cfg, c.config.width.value_or(head.framebuffer().width()),
                          c.config.height.value_or(head.framebuffer().height()));
        }
        ++summary.controlsApplied;
      }
      head.step();
      ++summary.framesRendered;
    }
    head.drain();
    head.shutdown();
  } catch (...) {
    failure = std::current_exception();
  }
  session->close_normal();
  guard.reset();
  // The close handshake gets a moment before the socket is torn down.
  for (int i = 0; i < 200 && !session->finished(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  ioc.stop();
  io.join();
  summary.framesSent = session->frames_sent();
  if (failure) std::rethrow_exception(failure);
  return summary;
}

} // namespace elephant::dfb
