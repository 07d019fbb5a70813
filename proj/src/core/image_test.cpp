// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/core/image.hpp"

#include "elephant/core/error.hpp"

#include "temp_dir.hpp"

#include <doctest.h>

#include <cstring>
#include <fstream>

using namespace elephant;

TEST_CASE("pfm roundtrip keeps every float") {
  testing::TempDir dir;
  ImageRgb img{3, 2};
  for (uint32_t y = 0; y < 2; ++y)
    for (uint32_t x = 0; x < 3; ++x) img.at(x, y) = Rgb{float(x), float(y), -1.5f + x * y};
  write_pfm(img, dir / "a.pfm");
  const ImageRgb back = read_pfm(dir / "a.pfm");
  CHECK(back.width == 3);
  CHECK(back.height == 2);
  CHECK(back.pixels == img.pixels);
}

TEST_CASE("pfm stores rows bottom to top") {
  testing::TempDir dir;
  ImageRgb img{1, 2};
  img.at(0, 0) = Rgb{1.f};
  img.at(0, 1) = Rgb{2.f};
  write_pfm(img, dir / "a.pfm");
  std::ifstream in(dir / "a.pfm", std::ios::binary);
  std::string header((std::istreambuf_iterator<char>(in)), {});
  float first;
  std::memcpy(&first, header.data() + header.size() - 24, 4);
  CHECK(first == 2.f);
}

TEST_CASE("gray pfm and malformed input") {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "g.pfm", std::ios::binary);
    out << "Pf\n2 1\n-1\n";
    const float v[2] = {0.25f, 4.f};
    out.write(reinterpret_cast<const char *>(v), 8);
  }
  const ImageRgb g = read_pfm(dir / "g.pfm");
  CHECK(g.at(1, 0) == Rgb{4.f});
  {
    std::ofstream out(dir / "bad.pfm", std::ios::binary);
    out << "P6\n2 1\n255\n";
  }
  CHECK_THROWS_AS(read_pfm(dir / "bad.pfm"), Error);
  {
    std::ofstream out(dir / "short.pfm", std::ios::binary);
    out << "PF\n2 2\n-1\n1234";
  }
  CHECK_THROWS_AS(read_pfm(dir / "short.pfm"), Error);
}
