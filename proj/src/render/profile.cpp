// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/profile.hpp"

namespace elephant::render {

std::string_view category_name(Category c) {
  switch (c) {
  case Category::TraversalIntersect: return "traversal_intersect";
  case Category::PostIntersect: return "post_intersect";
  case Category::Texture: return "texture";
  case Category::SampleShade: return "sample_shade";
  case Category::Other: return "other";
  }
  return "?";
}

std::string_view category_label(Category c) {
  switch (c) {
  case Category::TraversalIntersect: return "Traversal & Intersect";
  case Category::PostIntersect: return "PostIsec";
  case Category::Texture: return "Texture";
  case Category::SampleShade: return "Sample & Shade";
  case Category::Other: return "Other";
  }
  return "?";
}

} // namespace elephant::render
