#include "sctrack/features.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "sctrack/error.hpp"

namespace sctrack {

namespace {

constexpr double kExtentSlack = 1e-9;

std::string size_str(Size s) { return std::to_string(s.width) + "x" + std::to_string(s.height); }

}  // namespace

ExtentRange rect_extent_range(int side, int min_px, double beta_min, double beta_max) {
  const double lo = std::max(static_cast<double>(min_px), beta_min * side);
  return {static_cast<int>(std::ceil(lo - kExtentSlack)),
          static_cast<int>(std::floor(beta_max * side + kExtentSlack))};
}

SubRegionLayout generate_layout(Size sample_size, Size subregion_size, std::size_t n_subregions, Rng& rng) {
  if (n_subregions < 1) {
    throw InvalidConfig("number of sub-regions must be >= 1");
  }
  if (subregion_size.width < 1 || subregion_size.height < 1 || subregion_size.width > sample_size.width ||
      subregion_size.height > sample_size.height) {
    throw InvalidConfig("sub-region " + size_str(subregion_size) + " does not fit sample " + size_str(sample_size));
  }
  std::uniform_int_distribution<int> px(0, sample_size.width - subregion_size.width);
  std::uniform_int_distribution<int> py(0, sample_size.height - subregion_size.height);
  SubRegionLayout layout{sample_size, subregion_size, {}};
  layout.positions.reserve(n_subregions);
  for (std::size_t i = 0; i < n_subregions; ++i) {
    const int x = px(rng);
    const int y = py(rng);
    layout.positions.push_back({x, y});
  }
  return layout;
}

FeaturePool generate_pool(const SubRegionLayout& layout, std::size_t m, const FeatureConfig& config, Rng& rng) {
  if (layout.positions.empty()) {
    throw InvalidConfig("layout has no sub-regions");
  }
  if (config.min_rects < 1 || config.max_rects < config.min_rects) {
    throw InvalidConfig("rectangle count range is empty");
  }
  if (!(config.positive_sign_probability >= 0.0 && config.positive_sign_probability <= 1.0)) {
    throw InvalidConfig("positive_sign_probability must lie in [0, 1]");
  }
  const Size region = layout.subregion_size;
  const ExtentRange wr = rect_extent_range(region.width, config.min_width, config.beta_min, config.beta_max);
  const ExtentRange hr = rect_extent_range(region.height, config.min_height, config.beta_min, config.beta_max);
  if (wr.lo > wr.hi || wr.hi > region.width || wr.lo < 1) {
    throw InvalidConfig("rectangle width bounds unsatisfiable for sub-region width " + std::to_string(region.width));
  }
  if (hr.lo > hr.hi || hr.hi > region.height || hr.lo < 1) {
    throw InvalidConfig("rectangle height bounds unsatisfiable for sub-region height " +
                        std::to_string(region.height));
  }

  FeaturePool pool;
  pool.layout = layout;
  pool.rho = static_cast<double>(layout.sample_size.width) * layout.sample_size.height / 4.0;
  const double magnitude = std::sqrt(pool.rho);

  std::uniform_int_distribution<std::size_t> pick_region(0, layout.positions.size() - 1);
  std::uniform_int_distribution<int> pick_count(config.min_rects, config.max_rects);
  std::uniform_int_distribution<int> pick_w(wr.lo, wr.hi);
  std::uniform_int_distribution<int> pick_h(hr.lo, hr.hi);
  std::bernoulli_distribution positive(config.positive_sign_probability);

  pool.templates.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    FeatureTemplate t;
    t.region = pick_region(rng);
    const int count = pick_count(rng);
    t.rects.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
      WeightedRect r;
      r.w = pick_w(rng);
      r.h = pick_h(rng);
      r.x = std::uniform_int_distribution<int>(0, region.width - r.w)(rng);
      r.y = std::uniform_int_distribution<int>(0, region.height - r.h)(rng);
      r.weight = positive(rng) ? magnitude : -magnitude;
      t.rects.push_back(r);
    }
    pool.templates.push_back(std::move(t));
  }
  return pool;
}

double legacy_matrix_entry(Rng& rng, double rho) {
  if (!(rho >= 1.0)) {
    throw InvalidInput("rho must be >= 1");
  }
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double half = 1.0 / (2.0 * rho);
  if (u < half) return -std::sqrt(rho);
  if (u < 2.0 * half) return std::sqrt(rho);
  return 0.0;
}

double feature_value(const IntegralImage& ii, Point origin, const FeaturePool& pool, std::size_t index) {
  const FeatureTemplate& t = pool.templates[index];
  const Point reg = pool.layout.positions[t.region];
  const int ox = origin.x + reg.x;
  const int oy = origin.y + reg.y;
  double value = 0.0;
  for (const WeightedRect& r : t.rects) {
    value += r.weight * static_cast<double>(ii.rect_sum_unchecked(ox + r.x, oy + r.y, r.w, r.h));
  }
  return value;
}

namespace {

void check_sample(const IntegralImage& ii, Point origin, const FeaturePool& pool) {
  const Size s = pool.layout.sample_size;
  if (origin.x < 0 || origin.y < 0 || origin.x + s.width > ii.width() || origin.y + s.height > ii.height()) {
    throw OutOfBounds("sample at (" + std::to_string(origin.x) + "," + std::to_string(origin.y) + ") of size " +
                      size_str(s) + " leaves the " + std::to_string(ii.width()) + "x" +
                      std::to_string(ii.height()) + " image");
  }
}

}  // namespace

std::vector<double> extract_features(const IntegralImage& ii, Point origin, const FeaturePool& pool) {
  check_sample(ii, origin, pool);
  std::vector<double> out(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    out[i] = feature_value(ii, origin, pool, i);
  }
  return out;
}

FeatureMatrix extract_features(const IntegralImage& ii, std::span<const Point> origins, const FeaturePool& pool) {
  FeatureMatrix out(origins.size(), pool.size());
  for (std::size_t r = 0; r < origins.size(); ++r) {
    check_sample(ii, origins[r], pool);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      out(r, i) = feature_value(ii, origins[r], pool, i);
    }
  }
  return out;
}

void write_pool(std::ostream& out, const FeaturePool& pool) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "sctrack-feature-pool 1\n";
  out << "sample " << pool.layout.sample_size.width << ' ' << pool.layout.sample_size.height << '\n';
  out << "subregion " << pool.layout.subregion_size.width << ' ' << pool.layout.subregion_size.height << '\n';
  out << "rho " << pool.rho << '\n';
  out << "regions " << pool.layout.positions.size() << '\n';
  for (const Point& p : pool.layout.positions) {
    out << p.x << ' ' << p.y << '\n';
  }
  out << "templates " << pool.templates.size() << '\n';
  for (const FeatureTemplate& t : pool.templates) {
    out << t.region << ' ' << t.rects.size();
    for (const WeightedRect& r : t.rects) {
      out << ' ' << r.x << ' ' << r.y << ' ' << r.w << ' ' << r.h << ' ' << r.weight;
    }
    out << '\n';
  }
  out.precision(old_precision);
}

namespace {

void expect_word(std::istream& in, const char* word) {
  std::string got;
  if (!(in >> got) || got != word) {
    throw InvalidInput(std::string("feature pool: expected '") + word + "', got '" + got + "'");
  }
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) {
    throw InvalidInput(std::string("feature pool: cannot read ") + what);
  }
  return v;
}

}  // namespace

FeaturePool read_pool(std::istream& in) {
  expect_word(in, "sctrack-feature-pool");
  if (read_value<int>(in, "version") != 1) {
    throw InvalidInput("feature pool: unsupported version");
  }
  FeaturePool pool;
  expect_word(in, "sample");
  pool.layout.sample_size.width = read_value<int>(in, "sample width");
  pool.layout.sample_size.height = read_value<int>(in, "sample height");
  expect_word(in, "subregion");
  pool.layout.subregion_size.width = read_value<int>(in, "subregion width");
  pool.layout.subregion_size.height = read_value<int>(in, "subregion height");
  expect_word(in, "rho");
  pool.rho = read_value<double>(in, "rho");
  expect_word(in, "regions");
  const auto n_regions = read_value<std::size_t>(in, "region count");
  for (std::size_t i = 0; i < n_regions; ++i) {
    const int x = read_value<int>(in, "region x");
    const int y = read_value<int>(in, "region y");
    if (x < 0 || y < 0 || x + pool.layout.subregion_size.width > pool.layout.sample_size.width ||
        y + pool.layout.subregion_size.height > pool.layout.sample_size.height) {
      throw InvalidInput("feature pool: sub-region " + std::to_string(i) + " leaves the sample box");
    }
    pool.layout.positions.push_back({x, y});
  }
  expect_word(in, "templates");
  const auto n_templates = read_value<std::size_t>(in, "template count");
  const Size region = pool.layout.subregion_size;
  for (std::size_t i = 0; i < n_templates; ++i) {
    FeatureTemplate t;
    t.region = read_value<std::size_t>(in, "template region");
    if (t.region >= n_regions) {
      throw InvalidInput("feature pool: template " + std::to_string(i) + " names a missing sub-region");
    }
    const auto n_rects = read_value<std::size_t>(in, "rect count");
    for (std::size_t j = 0; j < n_rects; ++j) {
      WeightedRect r;
      r.x = read_value<int>(in, "rect x");
      r.y = read_value<int>(in, "rect y");
      r.w = read_value<int>(in, "rect w");
      r.h = read_value<int>(in, "rect h");
      r.weight = read_value<double>(in, "rect weight");
      if (r.x < 0 || r.y < 0 || r.w < 1 || r.h < 1 || r.x + r.w > region.width || r.y + r.h > region.height) {
        throw InvalidInput("feature pool: template " + std::to_string(i) + " has a rectangle outside its sub-region");
      }
      t.rects.push_back(r);
    }
    pool.templates.push_back(std::move(t));
  }
  return pool;
}

}  // namespace sctrack
