#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sctrack {

using Rng = std::mt19937_64;

struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Size {
  int width = 0;
  int height = 0;

  friend bool operator==(const Size&, const Size&) = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned box in 0-indexed pixel coordinates. Width and height are
/// at least one pixel.
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  BoundingBox() = default;
  BoundingBox(int x_, int y_, int w_, int h_);

  Point origin() const { return {x, y}; }
  Size size() const { return {w, h}; }
  Vec2 center() const { return {x + w / 2.0, y + h / 2.0}; }
  double area() const { return static_cast<double>(w) * h; }

  BoundingBox moved_to(Point p) const { return {p.x, p.y, w, h}; }
  bool inside(Size frame) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Row-major 8-bit grayscale image.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  int index = 0;

  Frame() = default;
  Frame(int width_, int height_, std::vector<std::uint8_t> pixels_, int index_ = 0);
  Frame(int width_, int height_, std::uint8_t fill, int index_ = 0);

  Size size() const { return {width, height}; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Summed-area table with a zero guard row and column.
class IntegralImage {
 public:
  explicit IntegralImage(const Frame& frame);

  int width() const { return width_; }
  int height() const { return height_; }

  /// Sum of all pixels strictly above and left of (x, y); 0 <= x <= width.
  std::int64_t at(int x, int y) const { return table_[static_cast<std::size_t>(y) * (width_ + 1) + x]; }

  /// Throws OutOfBounds when `r` does not fit the image.
  std::int64_t rect_sum(const BoundingBox& r) const;

  /// Unchecked four-lookup sum for hot loops; caller guarantees bounds.
  std::int64_t rect_sum_unchecked(int x, int y, int w, int h) const {
    const std::size_t stride = static_cast<std::size_t>(width_) + 1;
    const std::int64_t* top = table_.data() + static_cast<std::size_t>(y) * stride;
    const std::int64_t* bottom = top + static_cast<std::size_t>(h) * stride;
    return bottom[x + w] - bottom[x] - top[x + w] + top[x];
  }

 private:
  int width_;
  int height_;
  std::vector<std::int64_t> table_;
};

/// Annulus (or disk when inner_radius is zero) of anchor positions on a
/// square grid of spacing `step` centred on `center`.
/// Membership: inner_radius <= |p - center| < outer_radius.
struct LatticeDisk {
  Point center;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  int step = 1;
};

/// Positions of `disk` whose `sample_size` box fits inside `frame`, in
/// (y, x) scan order. Empty when the disk is fully clipped.
std::vector<Point> enumerate_positions(const LatticeDisk& disk, Size sample_size, Size frame);

/// Uniform sample of `count` positions without replacement, keeping input
/// order. Returns the input unchanged when it has at most `count` entries.
std::vector<Point> subsample_positions(std::span<const Point> positions, std::size_t count, Rng& rng);

double distance(Point a, Point b);

}  // namespace sctrack
