// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/accel/bvh.hpp"

#include "elephant/core/error.hpp"

#include <algorithm>
#include <numeric>

namespace elephant::accel {

std::size_t Bvh::leaf_count() const {
  return std::count_if(nodes.begin(), nodes.end(), [](const BvhNode &n) { return n.is_leaf(); });
}

uint32_t Bvh::depth() const {
  if (nodes.empty()) return 0;
  uint32_t best = 0;
  std::vector<std::pair<uint32_t, uint32_t>> stack{{0, 1}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (!nodes[i].is_leaf()) {
      stack.push_back({nodes[i].leftOrFirst, d + 1});
      stack.push_back({nodes[i].rightChild, d + 1});
    }
  }
  return best;
}

namespace {

struct Builder {
  std::span<const BuildPrimitive> prims;
  std::vector<uint32_t> &order;
  std::vector<BvhNode> &nodes;

  struct Split {
    int axis = -1;
    int bin = 0;
    float cost = kInfinity;
  };

  Split find_split(uint32_t begin, uint32_t end, const Aabb &centroidBounds, float parentArea) const {
    Split best;
    const uint32_t n = end - begin;
    for (int axis = 0; axis < 3; ++axis) {
      const float lo = centroidBounds.lower[axis];
      const float extent = centroidBounds.upper[axis] - lo;
      if (!(extent > 0.f)) continue;
      const float scale = float(kSahBins) / extent;
      Aabb binBounds[kSahBins];
      uint32_t binCount[kSahBins] = {};
      for (uint32_t i = begin; i < end; ++i) {
        const BuildPrimitive &p = prims[order[i]];
        const int b = std::min(kSahBins - 1, int((p.centroid[axis] - lo) * scale));
        binBounds[b].extend(p.bounds);
        ++binCount[b];
      }
      float rightArea[kSahBins];
      uint32_t rightCount[kSahBins];
      Aabb acc;
      uint32_t cnt = 0;
      for (int b = kSahBins - 1; b > 0; --b) {
        acc.extend(binBounds[b]);
        cnt += binCount[b];
        rightArea[b] = acc.half_area();
        rightCount[b] = cnt;
      }
      acc = Aabb{};
      cnt = 0;
      for (int b = 0; b < kSahBins - 1; ++b) {
        acc.extend(binBounds[b]);
        cnt += binCount[b];
        if (cnt == 0 || cnt == n) continue;
        const float cost = kTraversalCost +
                           (acc.half_area() * float(cnt) + rightArea[b + 1] * float(rightCount[b + 1])) /
                               std::max(parentArea, 1e-30f);
        if (cost < best.cost) best = {axis, b, cost};
      }
    }
    return best;
  }

  uint32_t make_leaf(uint32_t index, uint32_t begin, uint32_t end) {
    nodes[index].leftOrFirst = begin;
    nodes[index].count = end - begin;
    return index;
  }

  void build(uint32_t index, uint32_t begin, uint32_t end) {
    Aabb bounds, centroidBounds;
    for (uint32_t i = begin; i < end; ++i) {
      bounds.extend(prims[order[i]].bounds);
      centroidBounds.extend(prims[order[i]].centroid);
    }
    nodes[index].bounds = bounds;
    const uint32_t n = end - begin;
    if (n == 1) {
      make_leaf(index, begin, end);
      return;
    }

    const Split split = find_split(begin, end, centroidBounds, bounds.half_area());
    uint32_t mid;
    if (split.axis >= 0 && (n > kMaxLeafSize || split.cost < float(n))) {
      const int axis = split.axis;
      const float lo = centroidBounds.lower[axis];
      const float scale = float(kSahBins) / (centroidBounds.upper[axis] - lo);
      auto it = std::stable_partition(order.begin() + begin, order.begin() + end, [&](uint32_t p) {
        return std::min(kSahBins - 1, int((prims[p].centroid[axis] - lo) * scale)) <= split.bin;
      });
      mid = uint32_t(it - order.begin());
    } else if (n <= kMaxLeafSize) {
      make_leaf(index, begin, end);
      return;
    } else {
      // Coincident centroids: split by input order.
      mid = begin + n / 2;
    }

    const uint32_t left = uint32_t(nodes.size());
    nodes.emplace_back();
    nodes.emplace_back();
    nodes[index].leftOrFirst = left;
    nodes[index].rightChild = left + 1;
    nodes[index].count = 0;
    pending.push_back({left + 1, mid, end});
    pending.push_back({left, begin, mid});
  }

  struct Task {
    uint32_t index, begin, end;
  };
  std::vector<Task> pending;

  void run(uint32_t n) {
    pending.push_back({0, 0, n});
    while (!pending.empty()) {
      const Task t = pending.back();
      pending.pop_back();
      build(t.index, t.begin, t.end);
    }
  }
};

} // namespace

Bvh build_bvh(std::span<const BuildPrimitive> primitives) {
  if (primitives.empty()) throw EmptyInput();
  Bvh bvh;
  bvh.primitiveOrder.resize(primitives.size());
  std::iota(bvh.primitiveOrder.begin(), bvh.primitiveOrder.end(), 0u);
  bvh.nodes.reserve(2 * primitives.size());
  bvh.nodes.emplace_back();
  Builder b{primitives, bvh.primitiveOrder, bvh.nodes, {}};
  b.run(uint32_t(primitives.size()));
  return bvh;
}

} // namespace elephant::accel
