// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <string_view>

namespace elephant::render {

enum class Category : uint8_t { TraversalIntersect, PostIntersect, Texture, SampleShade, Other };
inline constexpr std::size_t kCategoryCount = 5;

std::string_view category_name(Category c);
// Column labels used in reports.
std::string_view category_label(Category c);

// Per-thread wall-clock accounting; exactly one category is open at a time.
class ThreadProfiler {
public:
  using Clock = std::chrono::steady_clock;

  explicit ThreadProfiler(bool enabled = true) : enabled_(enabled) {}

  void start() {
    if (!enabled_) return;
    current_ = Category::Other;
    last_ = Clock::now();
  }
  Category switch_to(Category c) {
    const Category prev = current_;
    if (enabled_ && c != current_) {
      const auto now = Clock::now();
      ticks_[std::size_t(current_)] += (now - last_).count();
      last_ = now;
    }
    current_ = c;
    return prev;
  }
  void stop() {
    switch_to(Category::Other);
    flush();
  }

  std::array<double, kCategoryCount> seconds() const {
    std::array<double, kCategoryCount> s{};
    for (std::size_t i = 0; i < kCategoryCount; ++i)
      s[i] = std::chrono::duration<double>(Clock::duration(ticks_[i])).count();
    return s;
  }
  bool enabled() const { return enabled_; }

private:
  void flush() {
    if (!enabled_) return;
    const auto now = Clock::now();
    ticks_[std::size_t(current_)] += (now - last_).count();
    last_ = now;
  }

  bool enabled_;
  Category current_ = Category::Other;
  Clock::time_point last_{};
  std::array<int64_t, kCategoryCount> ticks_{};
};

class ScopedCategory {
public:
  ScopedCategory(ThreadProfiler *p, Category c) : p_(p) {
    if (p_) prev_ = p_->switch_to(c);
  }
  ~ScopedCategory() {
    if (p_) p_->switch_to(prev_);
  }
  ScopedCategory(const ScopedCategory &) = delete;
  ScopedCategory &operator=(const ScopedCategory &) = delete;

private:
  ThreadProfiler *p_;
  Category prev_ = Category::Other;
};

} // namespace elephant::render
