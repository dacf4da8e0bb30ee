#include "sctrack/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sctrack/error.hpp"

namespace sctrack {

namespace {

constexpr int kBackgroundCell = 16;

void fail(const std::string& field, const std::string& why) { throw InvalidInput("synthetic spec: " + field + " " + why); }

std::uint8_t to_pixel(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

// Bilinear upsampling of a coarse random grid: smooth, low-contrast clutter.
// Both textures are integer valued so gain is applied to exact 8-bit levels.
std::vector<double> make_background(Size size, Rng& rng) {
  const int gw = size.width / kBackgroundCell + 2;
  const int gh = size.height / kBackgroundCell + 2;
  std::uniform_real_distribution<double> level(60.0, 190.0);
  std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
  for (double& g : grid) g = level(rng);
  std::vector<double> out(static_cast<std::size_t>(size.width) * size.height);
  for (int y = 0; y < size.height; ++y) {
    const double fy = static_cast<double>(y) / kBackgroundCell;
    const int y0 = static_cast<int>(fy);
    const double ty = fy - y0;
    for (int x = 0; x < size.width; ++x) {
      const double fx = static_cast<double>(x) / kBackgroundCell;
      const int x0 = static_cast<int>(fx);
      const double tx = fx - x0;
      const auto g = [&](int gx, int gy) { return grid[static_cast<std::size_t>(gy) * gw + gx]; };
      const double top = g(x0, y0) * (1 - tx) + g(x0 + 1, y0) * tx;
      const double bottom = g(x0, y0 + 1) * (1 - tx) + g(x0 + 1, y0 + 1) * tx;
      out[static_cast<std::size_t>(y) * size.width + x] = std::round(top * (1 - ty) + bottom * ty);
    }
  }
  return out;
}

// Blocky high-contrast pattern.
std::vector<double> make_target(Size size, int cell, Rng& rng) {
  const int cw = (size.width + cell - 1) / cell;
  const int ch = (size.height + cell - 1) / cell;
  std::uniform_real_distribution<double> level(0.0, 255.0);
  std::vector<double> blocks(static_cast<std::size_t>(cw) * ch);
  for (double& b : blocks) b = std::round(level(rng));
  std::vector<double> out(static_cast<std::size_t>(size.width) * size.height);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      out[static_cast<std::size_t>(y) * size.width + x] = blocks[static_cast<std::size_t>(y / cell) * cw + x / cell];
    }
  }
  return out;
}

std::vector<Point> random_walk(const SyntheticSpec& spec, Rng& rng) {
  const int max_x = spec.frame_size.width - spec.target_size.width;
  const int max_y = spec.frame_size.height - spec.target_size.height;
  Point p = spec.start.value_or(Point{max_x / 2, max_y / 2});
  std::vector<Point> path;
  path.reserve(spec.frames);
  path.push_back(p);
  std::normal_distribution<double> jitter(0.0, std::max(spec.max_displacement, 1e-9) / 4.0);
  double vx = 0.0;
  double vy = 0.0;
  for (std::size_t t = 1; t < spec.frames; ++t) {
    vx += jitter(rng);
    vy += jitter(rng);
    const double norm = std::hypot(vx, vy);
    if (norm > spec.max_displacement) {
      const double s = spec.max_displacement / norm;
      vx *= s;
      vy *= s;
    }
    // Truncation toward zero keeps |step| <= |v| <= max_displacement.
    Point next{p.x + static_cast<int>(std::trunc(vx)), p.y + static_cast<int>(std::trunc(vy))};
    if (next.x < 0 || next.x > max_x) {
      vx = -vx;
      next.x = std::clamp(next.x, 0, max_x);
    }
    if (next.y < 0 || next.y > max_y) {
      vy = -vy;
      next.y = std::clamp(next.y, 0, max_y);
    }
    p = next;
    path.push_back(p);
  }
  return path;
}

}  // namespace

void validate(const SyntheticSpec& spec) {
  if (spec.frame_size.width < 1 || spec.frame_size.height < 1) fail("frame_size", "must be positive");
  if (spec.target_size.width < 1 || spec.target_size.height < 1) fail("target_size", "must be positive");
  if (spec.target_size.width > spec.frame_size.width || spec.target_size.height > spec.frame_size.height) {
    fail("target_size", "exceeds frame_size");
  }
  if (spec.frames < 1) fail("frames", "must be >= 1");
  if (!(spec.max_displacement >= 0.0)) fail("max_displacement", "must be >= 0");
  if (!(spec.gain_start > 0.0)) fail("gain_start", "must be > 0");
  if (!(spec.gain_end > 0.0)) fail("gain_end", "must be > 0");
  if (!(spec.noise_sigma >= 0.0)) fail("noise_sigma", "must be >= 0");
  if (spec.texture_cell < 1) fail("texture_cell", "must be >= 1");
  const BoundingBox target_extent(0, 0, spec.target_size.width, spec.target_size.height);
  if (spec.start) {
    if (!target_extent.moved_to(*spec.start).inside(spec.frame_size)) fail("start", "puts the target outside the frame");
  }
  if (!spec.path.empty()) {
    if (spec.path.size() != spec.frames) fail("path", "must list one position per frame");
    for (std::size_t t = 0; t < spec.path.size(); ++t) {
      if (!target_extent.moved_to(spec.path[t]).inside(spec.frame_size)) {
        fail("path", "leaves the frame at frame " + std::to_string(t));
      }
      if (t > 0 && distance(spec.path[t], spec.path[t - 1]) > spec.max_displacement) {
        fail("path", "moves more than max_displacement at frame " + std::to_string(t));
      }
    }
  }
  for (std::size_t i = 0; i < spec.occlusions.size(); ++i) {
    const OcclusionEvent& e = spec.occlusions[i];
    const std::string field = "occlusion[" + std::to_string(i) + "]";
    if (e.first_frame > e.last_frame) fail(field, "has first_frame after last_frame");
    if (!e.region.inside(spec.target_size)) fail(field, "region is not inside the target");
  }
}

double gain_at(const SyntheticSpec& spec, std::size_t frame) {
  if (spec.frames <= 1) return spec.gain_start;
  const double t = static_cast<double>(frame) / static_cast<double>(spec.frames - 1);
  return spec.gain_start + (spec.gain_end - spec.gain_start) * t;
}

SyntheticSequence generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const std::vector<double> background = make_background(spec.frame_size, rng);
  const std::vector<double> target = make_target(spec.target_size, spec.texture_cell, rng);
  const std::vector<Point> path = spec.path.empty() ? random_walk(spec, rng) : spec.path;
  std::normal_distribution<double> noise(0.0, 1.0);

  const int fw = spec.frame_size.width;
  const int tw = spec.target_size.width;
  SyntheticSequence seq;
  seq.frames.reserve(spec.frames);
  seq.truth.reserve(spec.frames);
  std::vector<double> canvas;
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const Point at = path[t];
    canvas = background;
    for (int y = 0; y < spec.target_size.height; ++y) {
      for (int x = 0; x < tw; ++x) {
        canvas[static_cast<std::size_t>(at.y + y) * fw + at.x + x] = target[static_cast<std::size_t>(y) * tw + x];
      }
    }
    const double gain = gain_at(spec, t);
    Frame frame(fw, spec.frame_size.height, std::uint8_t{0}, static_cast<int>(t));
    for (std::size_t i = 0; i < canvas.size(); ++i) {
      double v = std::clamp(std::round(gain * canvas[i]), 0.0, 255.0);
      if (spec.noise_sigma > 0.0) v += spec.noise_sigma * noise(rng);
      frame.pixels[i] = to_pixel(v);
    }
    for (const OcclusionEvent& e : spec.occlusions) {
      if (t < e.first_frame || t > e.last_frame) continue;
      for (int y = e.region.y; y < e.region.y + e.region.h; ++y) {
        for (int x = e.region.x; x < e.region.x + e.region.w; ++x) {
          frame.at(at.x + x, at.y + y) = e.fill;
        }
      }
    }
    seq.truth.emplace_back(at.x, at.y, spec.target_size.width, spec.target_size.height);
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

}  // namespace sctrack
