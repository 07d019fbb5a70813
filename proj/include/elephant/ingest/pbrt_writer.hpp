// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"

#include <iosfwd>

namespace elephant::ingest {

// Emits the scene in the accepted PBRT subset. Floats use shortest round-trip
// formatting, so parse_pbrt(write_pbrt(s)) reproduces every array bit for bit.
// Every object is written as an ObjectBegin block and every instance as an
// ObjectInstance, so object names must be unique and non-empty.
void write_pbrt(const SceneDesc &scene, std::ostream &out);

} // namespace elephant::ingest
