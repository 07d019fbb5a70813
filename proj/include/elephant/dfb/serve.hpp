// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/dfb/viewer_protocol.hpp"

#include <functional>

namespace elephant::dfb {

struct ServeOptions {
  Endpoint listen{"127.0.0.1", 8080};
  FrameFormat format = FrameFormat::Png;
  float exposure = 1.f;
  uint32_t maxFrames = 0; // 0 renders until the viewer leaves
  // Called once the viewer port is bound, with the actual port.
  std::function<void(uint16_t)> onListening;
};

struct ServeSummary {
  uint32_t framesRendered = 0;
  uint32_t framesSent = 0;
  uint32_t controlsApplied = 0;
};

// Accepts one WebSocket viewer session and streams frames to it while applying
// its camera and config messages. Returns when the viewer disconnects or after
// maxFrames frames. Throws BindFailure when the address cannot be bound.
ServeSummary serve(const ServeOptions &options, std::vector<std::unique_ptr<Connection>> workers, SceneSource scene,
                   HeadOptions head);

} // namespace elephant::dfb
