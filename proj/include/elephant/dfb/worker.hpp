// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/dfb/transport.hpp"
#include "elephant/render/world.hpp"

namespace elephant::dfb {

struct WorkerOptions {
  render::WorldOptions world;
};

// Sends Hello, then serves the head until Shutdown or until the connection
// closes. Throws ProtocolError for a frame or config before SetScene and
// SceneHashMismatch when the scene bytes fail verification; the connection is
// closed before the exception propagates.
void run_worker(Connection &connection, uint32_t workerId, const WorkerOptions &options = {});

} // namespace elephant::dfb
