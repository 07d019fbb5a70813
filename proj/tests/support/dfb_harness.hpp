// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/dfb/head.hpp"

#include <atomic>

namespace elephant::testing {

// Worker-side endpoint that dies after a number of tile results, as a crashed
// worker would: the peer sees the stream end.
class DyingConnection final : public dfb::Connection {
public:
  DyingConnection(std::unique_ptr<dfb::Connection> inner, int tilesBeforeDeath)
      : inner_(std::move(inner)), left_(tilesBeforeDeath) {}

  void send(const dfb::Message &m) override {
    if (dead_) return;
    if (std::holds_alternative<dfb::TileResult>(m) && left_-- <= 0) {
      dead_ = true;
      inner_->close();
      return;
    }
    inner_->send(m);
  }
  std::optional<dfb::Message> receive() override { return dead_ ? std::nullopt : inner_->receive(); }
  void close() override { inner_->close(); }
  bool dead() const { return dead_; }

private:
  std::unique_ptr<dfb::Connection> inner_;
  std::atomic<int> left_;
  std::atomic<bool> dead_{false};
};

} // namespace elephant::testing
