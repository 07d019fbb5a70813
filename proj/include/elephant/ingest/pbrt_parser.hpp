// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace elephant::ingest {

inline constexpr int kMaxIncludeDepth = 16;

// Parses the supported PBRT subset. Include paths resolve against basePath.
// Throws UnsupportedDirective, SyntaxError, UnbalancedBlock or MissingInclude.
SceneDesc parse_pbrt(std::istream &source, const std::filesystem::path &basePath);
SceneDesc parse_pbrt(std::string_view source, const std::filesystem::path &basePath);
SceneDesc parse_pbrt_file(const std::filesystem::path &path);

} // namespace elephant::ingest
