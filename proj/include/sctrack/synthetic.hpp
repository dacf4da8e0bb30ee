#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sctrack/geometry.hpp"

namespace sctrack {

/// Constant-value patch pasted over part of the target for a frame range.
struct OcclusionEvent {
  std::size_t first_frame = 0;  // inclusive, 0-based
  std::size_t last_frame = 0;   // inclusive
  BoundingBox region;           // relative to the target's top-left corner
  std::uint8_t fill = 0;
};

struct SyntheticSpec {
  Size frame_size{320, 240};
  Size target_size{40, 40};
  std::size_t frames = 100;
  double max_displacement = 6.0;
  std::uint64_t seed = 1;
  std::optional<Point> start;  // defaults to the frame center
  std::vector<Point> path;     // explicit target origins per frame; overrides the random walk
  std::vector<OcclusionEvent> occlusions;
  double gain_start = 1.0;  // linear illumination ramp over the sequence
  double gain_end = 1.0;
  double noise_sigma = 0.0;
  int texture_cell = 5;  // target texture block size in pixels
};

struct SyntheticSequence {
  std::vector<Frame> frames;
  std::vector<BoundingBox> truth;
};

/// Throws InvalidInput naming the offending field.
void validate(const SyntheticSpec& spec);

double gain_at(const SyntheticSpec& spec, std::size_t frame);

/// Textured target composited on a smooth textured background. Per frame:
/// composite, scale by the illumination gain, add noise, then paste
/// occluders. Deterministic for a fixed seed.
SyntheticSequence generate_synthetic(const SyntheticSpec& spec);

}  // namespace sctrack
