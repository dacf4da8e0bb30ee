#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sctrack/error.hpp"
#include "sctrack/synthetic.hpp"

using namespace sctrack;

TEST_CASE("static sequence frames are identical") {
  SyntheticSpec spec;
  spec.frames = 5;
  spec.max_displacement = 0.0;
  const auto seq = generate_synthetic(spec);
  REQUIRE(seq.frames.size() == 5);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(seq.frames[i].pixels == seq.frames[0].pixels);
    CHECK(seq.truth[i] == seq.truth[0]);
    CHECK(seq.frames[i].index == static_cast<int>(i));
  }
  CHECK(seq.truth[0] == BoundingBox(140, 100, 40, 40));
}

TEST_CASE("motion respects the displacement bound and stays inside") {
  SyntheticSpec spec;
  spec.frames = 300;
  spec.seed = 12;
  const auto seq = generate_synthetic(spec);
  for (std::size_t i = 0; i < seq.truth.size(); ++i) {
    CHECK(seq.truth[i].inside(spec.frame_size));
    CHECK(seq.truth[i].size() == spec.target_size);
    if (i > 0) CHECK(distance(seq.truth[i].origin(), seq.truth[i - 1].origin()) <= spec.max_displacement + 1e-12);
  }
}

TEST_CASE("gain scales and clamps every pixel") {
  SyntheticSpec flat;
  flat.frames = 11;
  SyntheticSpec ramp = flat;
  ramp.gain_start = 1.0;
  ramp.gain_end = 2.0;
  const auto a = generate_synthetic(flat);
  const auto b = generate_synthetic(ramp);
  CHECK(gain_at(ramp, 0) == 1.0);
  CHECK(gain_at(ramp, 10) == 2.0);
  CHECK(gain_at(ramp, 5) == doctest::Approx(1.5));
  for (std::size_t t = 0; t < 11; ++t) {
    const double g = gain_at(ramp, t);
    bool all = true;
    for (std::size_t k = 0; k < a.frames[t].pixels.size(); ++k) {
      const long expect = std::clamp(std::lround(g * a.frames[t].pixels[k]), 0L, 255L);
      all = all && b.frames[t].pixels[k] == expect;
    }
    CHECK(all);
    CHECK(a.truth[t] == b.truth[t]);
  }
}

TEST_CASE("occluded pixels equal the fill value") {
  SyntheticSpec spec;
  spec.frames = 12;
  spec.occlusions.push_back({3, 7, BoundingBox(0, 0, 20, 20), 77});
  SyntheticSpec clean = spec;
  clean.occlusions.clear();
  const auto seq = generate_synthetic(spec);
  const auto ref = generate_synthetic(clean);
  for (std::size_t t = 0; t < 12; ++t) {
    const BoundingBox& box = seq.truth[t];
    const bool active = t >= 3 && t <= 7;
    int filled = 0;
    int differ = 0;
    for (int y = 0; y < 240; ++y) {
      for (int x = 0; x < 320; ++x) {
        const bool inside = x >= box.x && x < box.x + 20 && y >= box.y && y < box.y + 20;
        if (active && inside) {
          filled += seq.frames[t].at(x, y) == 77 ? 1 : 0;
        } else {
          differ += seq.frames[t].at(x, y) != ref.frames[t].at(x, y) ? 1 : 0;
        }
      }
    }
    CHECK(filled == (active ? 400 : 0));  // 25% of the 40x40 target
    CHECK(differ == 0);
  }
}

TEST_CASE("noise is seeded") {
  SyntheticSpec spec;
  spec.frames = 4;
  spec.noise_sigma = 5.0;
  const auto a = generate_synthetic(spec);
  const auto b = generate_synthetic(spec);
  for (std::size_t t = 0; t < 4; ++t) CHECK(a.frames[t].pixels == b.frames[t].pixels);
  spec.seed = 2;
  CHECK(generate_synthetic(spec).frames[0].pixels != a.frames[0].pixels);
}

TEST_CASE("explicit path") {
  SyntheticSpec spec;
  spec.frames = 3;
  spec.path = {{0, 0}, {5, 0}, {5, 5}};
  const auto seq = generate_synthetic(spec);
  CHECK(seq.truth[2] == BoundingBox(5, 5, 40, 40));
}

TEST_CASE("invalid specs name the field") {
  SyntheticSpec spec;
  spec.path = {{0, 0}, {290, 0}};
  spec.frames = 2;
  CHECK_THROWS_WITH_AS(generate_synthetic(spec), doctest::Contains("path"), InvalidInput);

  SyntheticSpec big;
  big.target_size = {400, 40};
  CHECK_THROWS_WITH_AS(validate(big), doctest::Contains("target"), InvalidInput);

  SyntheticSpec occl;
  occl.occlusions.push_back({5, 2, BoundingBox(0, 0, 5, 5), 0});
  CHECK_THROWS_WITH_AS(validate(occl), doctest::Contains("occlusion"), InvalidInput);

  SyntheticSpec none;
  none.frames = 0;
  CHECK_THROWS_WITH_AS(validate(none), doctest::Contains("frames"), InvalidInput);
}
