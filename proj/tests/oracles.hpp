#pragma once

// Brute-force reference computations used to check the library. Nothing here
// calls into the code path it is checking.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "sctrack/classifier.hpp"
#include "sctrack/features.hpp"
#include "sctrack/geometry.hpp"

namespace oracle {

using namespace sctrack;

inline Frame random_frame(std::mt19937_64& rng, int w, int h, int index = 0) {
  std::uniform_int_distribution<int> px(0, 255);
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h);
  for (auto& p : pixels) p = static_cast<std::uint8_t>(px(rng));
  return Frame(w, h, std::move(pixels), index);
}

inline std::int64_t pixel_sum(const Frame& f, int x, int y, int w, int h) {
  std::int64_t s = 0;
  for (int yy = y; yy < y + h; ++yy)
    for (int xx = x; xx < x + w; ++xx) s += f.at(xx, yy);
  return s;
}

/// Every grid point of the frame, tested against the disk definition.
inline std::vector<Point> lattice(const LatticeDisk& d, Size sample, Size frame) {
  std::vector<Point> out;
  for (int y = 0; y + sample.height <= frame.height; ++y) {
    for (int x = 0; x + sample.width <= frame.width; ++x) {
      const int dx = x - d.center.x;
      const int dy = y - d.center.y;
      if (dx % d.step != 0 || dy % d.step != 0) continue;
      const double dist = std::sqrt(static_cast<double>(dx * dx + dy * dy));
      if (dist >= d.inner_radius && dist < d.outer_radius) out.push_back({x, y});
    }
  }
  return out;
}

/// Feature value by direct pixel summation.
inline double feature_value(const Frame& f, Point origin, const FeaturePool& pool, std::size_t idx) {
  const FeatureTemplate& t = pool.templates[idx];
  const Point reg = pool.layout.positions[t.region];
  double v = 0.0;
  for (const WeightedRect& r : t.rects) {
    v += r.weight * static_cast<double>(pixel_sum(f, origin.x + reg.x + r.x, origin.y + reg.y + r.y, r.w, r.h));
  }
  return v;
}

inline std::vector<double> features(const Frame& f, Point origin, const FeaturePool& pool) {
  std::vector<double> v(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) v[i] = feature_value(f, origin, pool, i);
  return v;
}

inline double log_normal_pdf(double x, double mu, double sigma) {
  const double pi = 3.14159265358979323846;
  return -0.5 * std::log(2.0 * pi * sigma * sigma) - (x - mu) * (x - mu) / (2.0 * sigma * sigma);
}

inline double sigmoid(double h) { return 1.0 / (1.0 + std::exp(-h)); }

/// Bag log-likelihood recomputed from scratch for the feature set `chosen`
/// (summed in the given order).
inline double bag_likelihood(const ClassifierPool& pool, const std::vector<std::vector<double>>& pos,
                             const std::vector<double>& pos_weights, const std::vector<std::vector<double>>& neg,
                             const std::vector<std::size_t>& chosen) {
  const auto score = [&](const std::vector<double>& x) {
    double h = 0.0;
    for (std::size_t f : chosen) h += weak_log_ratio(x[f], pool.params[f]);
    return h;
  };
  double p_pos = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) p_pos += pos_weights[i] * sigmoid(score(pos[i]));
  double p_neg = 0.0;
  for (const auto& x : neg) p_neg += 1.0 - sigmoid(score(x));
  p_neg /= static_cast<double>(neg.size());
  const double eps = 1e-12;
  p_pos = std::min(std::max(p_pos, eps), 1.0 - eps);
  p_neg = std::min(std::max(p_neg, eps), 1.0 - eps);
  return std::log(p_pos) + std::log(p_neg);
}

/// Greedy selection re-evaluating the full likelihood for every candidate.
inline std::vector<std::size_t> greedy(const ClassifierPool& pool, const std::vector<std::vector<double>>& pos,
                                       const std::vector<double>& pos_weights,
                                       const std::vector<std::vector<double>>& neg, std::size_t k) {
  std::vector<std::size_t> chosen;
  std::vector<bool> used(pool.size(), false);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = pool.size();
    double best_l = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < pool.size(); ++m) {
      if (used[m]) continue;
      auto trial = chosen;
      trial.push_back(m);
      const double l = bag_likelihood(pool, pos, pos_weights, neg, trial);
      if (best == pool.size() || l > best_l) {
        best = m;
        best_l = l;
      }
    }
    used[best] = true;
    chosen.push_back(best);
  }
  return chosen;
}

}  // namespace oracle
