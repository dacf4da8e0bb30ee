#include "sctrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "sctrack/error.hpp"

namespace sctrack {

BoundingBox::BoundingBox(int x_, int y_, int w_, int h_) : x(x_), y(y_), w(w_), h(h_) {
  if (w < 1 || h < 1) {
    throw InvalidInput("bounding box needs w >= 1 and h >= 1, got " + std::to_string(w) + "x" +
                       std::to_string(h));
  }
}

bool BoundingBox::inside(Size frame) const {
  return x >= 0 && y >= 0 && x + w <= frame.width && y + h <= frame.height;
}

Frame::Frame(int width_, int height_, std::vector<std::uint8_t> pixels_, int index_)
    : width(width_), height(height_), pixels(std::move(pixels_)), index(index_) {
  if (width < 1 || height < 1) {
    throw InvalidInput("frame dimensions must be positive");
  }
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidInput("frame pixel count does not match width x height");
  }
}

Frame::Frame(int width_, int height_, std::uint8_t fill, int index_)
    : Frame(width_, height_,
            std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width_, 0)) * std::max(height_, 0), fill),
            index_) {}

IntegralImage::IntegralImage(const Frame& frame) : width_(frame.width), height_(frame.height) {
  if (width_ < 1 || height_ < 1 || frame.pixels.size() != static_cast<std::size_t>(width_) * height_) {
    throw InvalidInput("integral image needs a non-empty frame");
  }
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  table_.assign(stride * (static_cast<std::size_t>(height_) + 1), 0);
  for (int y = 0; y < height_; ++y) {
    std::int64_t row = 0;
    const std::int64_t* above = table_.data() + static_cast<std::size_t>(y) * stride;
    std::int64_t* out = table_.data() + static_cast<std::size_t>(y + 1) * stride;
    const std::uint8_t* src = frame.pixels.data() + static_cast<std::size_t>(y) * width_;
    for (int x = 0; x < width_; ++x) {
      row += src[x];
      out[x + 1] = above[x + 1] + row;
    }
  }
}

std::int64_t IntegralImage::rect_sum(const BoundingBox& r) const {
  if (!r.inside({width_, height_})) {
    throw OutOfBounds("rectangle (" + std::to_string(r.x) + "," + std::to_string(r.y) + "," +
                      std::to_string(r.w) + "," + std::to_string(r.h) + ") outside " +
                      std::to_string(width_) + "x" + std::to_string(height_) + " image");
  }
  return rect_sum_unchecked(r.x, r.y, r.w, r.h);
}

double distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<Point> enumerate_positions(const LatticeDisk& disk, Size sample_size, Size frame) {
  if (disk.step < 1) {
    throw InvalidInput("lattice step must be >= 1");
  }
  std::vector<Point> out;
  if (disk.outer_radius <= 0.0) {
    return out;
  }
  const int max_x = frame.width - sample_size.width;
  const int max_y = frame.height - sample_size.height;
  if (max_x < 0 || max_y < 0) {
    return out;
  }
  // Grid offsets i*step with |i*step| < outer_radius.
  const int reach = static_cast<int>(std::ceil(disk.outer_radius / disk.step));
  for (int j = -reach; j <= reach; ++j) {
    const int dy = j * disk.step;
    const int y = disk.center.y + dy;
    if (y < 0 || y > max_y) continue;
    for (int i = -reach; i <= reach; ++i) {
      const int dx = i * disk.step;
      const int x = disk.center.x + dx;
      if (x < 0 || x > max_x) continue;
      const double d = std::sqrt(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy);
      if (d >= disk.inner_radius && d < disk.outer_radius) {
        out.push_back({x, y});
      }
    }
  }
  return out;
}

std::vector<Point> subsample_positions(std::span<const Point> positions, std::size_t count, Rng& rng) {
  if (positions.size() <= count) {
    return {positions.begin(), positions.end()};
  }
  std::vector<Point> out;
  out.reserve(count);
  std::sample(positions.begin(), positions.end(), std::back_inserter(out), count, rng);
  return out;
}

}  // namespace sctrack
