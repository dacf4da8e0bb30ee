#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sctrack/geometry.hpp"

namespace sctrack {

/// N_s sub-windows placed inside the sample box. Offsets are relative to the
/// sample's top-left corner.
struct SubRegionLayout {
  Size sample_size;
  Size subregion_size;
  std::vector<Point> positions;

  std::size_t count() const { return positions.size(); }
};

/// A rectangle in sub-region coordinates together with its signed weight.
struct WeightedRect {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;
  double weight = 0.0;

  friend bool operator==(const WeightedRect&, const WeightedRect&) = default;
};

/// One compressed feature: 2 to 4 weighted rectangles confined to one
/// sub-region. Realizes one row of the sparse measurement matrix.
struct FeatureTemplate {
  std::size_t region = 0;
  std::vector<WeightedRect> rects;

  friend bool operator==(const FeatureTemplate&, const FeatureTemplate&) = default;
};

/// Rectangle size bounds and sign asymmetry used when drawing templates.
struct FeatureConfig {
  int min_width = 3;
  int min_height = 3;
  double beta_min = 0.3;
  double beta_max = 0.7;
  double positive_sign_probability = 0.78;
  int min_rects = 2;
  int max_rects = 4;
};

/// Inclusive integer range [lo, hi] of admissible rectangle extents for a
/// sub-region side of length `side`: max(min_px, beta_min*side) .. beta_max*side.
struct ExtentRange {
  int lo = 0;
  int hi = 0;
};
ExtentRange rect_extent_range(int side, int min_px, double beta_min, double beta_max);

struct FeaturePool {
  SubRegionLayout layout;
  std::vector<FeatureTemplate> templates;
  double rho = 1.0;

  std::size_t size() const { return templates.size(); }
};

/// Sub-region anchors drawn uniformly over [0, W-w] x [0, H-h].
SubRegionLayout generate_layout(Size sample_size, Size subregion_size, std::size_t n_subregions, Rng& rng);

/// Draws `m` templates over `layout`. rho = W*H/4 of the sample box.
FeaturePool generate_pool(const SubRegionLayout& layout, std::size_t m, const FeatureConfig& config, Rng& rng);

/// Entry of the dense-lineage sparse random matrix:
/// -sqrt(rho) w.p. 1/(2 rho), 0 w.p. 1 - 1/rho, +sqrt(rho) w.p. 1/(2 rho).
double legacy_matrix_entry(Rng& rng, double rho);

/// Value of template `index` for the sample whose top-left is `origin`.
/// No bounds check.
double feature_value(const IntegralImage& ii, Point origin, const FeaturePool& pool, std::size_t index);

/// All M feature values of the sample at `origin`. Throws OutOfBounds when
/// the sample box does not fit the image.
std::vector<double> extract_features(const IntegralImage& ii, Point origin, const FeaturePool& pool);

/// Row-major instances x features matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

FeatureMatrix extract_features(const IntegralImage& ii, std::span<const Point> origins, const FeaturePool& pool);

/// Plain-text pool description so runs can be replayed:
///
///   sctrack-feature-pool 1
///   sample W H
///   subregion w h
///   rho <value>
///   regions N
///   x y                        (N lines)
///   templates M
///   reg nr x y w h weight ...  (M lines, nr rect groups)
void write_pool(std::ostream& out, const FeaturePool& pool);
FeaturePool read_pool(std::istream& in);

}  // namespace sctrack
