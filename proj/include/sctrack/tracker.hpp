#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sctrack/classifier.hpp"
#include "sctrack/features.hpp"
#include "sctrack/geometry.hpp"
#include "sctrack/wmil.hpp"

namespace sctrack {

struct TrackerConfig {
  // Sampling radii in pixels: positives within alpha, negatives in [delta, beta).
  double alpha = 4.0;
  double delta = 8.0;
  double beta = 22.0;
  std::size_t n_negatives = 50;
  std::size_t n_s = 4;
  double lambda = 0.9;
  std::size_t m_features = 100;
  std::size_t k_selected = 20;

  // Coarse and fine detection.
  double r_c = 25.0;
  int omega_c = 4;
  double r_f = 10.0;
  int omega_f = 1;

  double subregion_fraction = 0.5;
  double beta_min = 0.3;
  double beta_max = 0.7;
  int w_min = 3;
  int h_min = 3;
  double sigma_floor = 1e-2;
  double occlusion_threshold = 0.0;
  bool occlusion_gating = true;
  std::uint64_t rng_seed = 1;

  /// Throws InvalidConfig naming the first violated constraint.
  void validate() const;

  FeatureConfig feature_config() const;
  Size subregion_size(Size sample) const;

  friend bool operator==(const TrackerConfig&, const TrackerConfig&) = default;
};

struct TrackerState {
  TrackerConfig config;
  FeaturePool pool;
  ClassifierPool classifier;
  std::vector<std::size_t> selected;
  BoundingBox position;
  Size frame_size;
  int frame_index = 0;
  Rng rng;
};

struct Detection {
  Point position;
  double score = 0.0;
  std::size_t candidates = 0;
};

struct FrameDiagnostics {
  int frame_index = 0;
  BoundingBox position;
  double coarse_score = 0.0;
  double fine_score = 0.0;
  std::size_t coarse_candidates = 0;
  std::size_t fine_candidates = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<bool> occluded;
  // False when gating was off or every sub-region flagged.
  bool gating_applied = false;
};

struct TrackResult {
  BoundingBox box;
  FrameDiagnostics diagnostics;
};

/// Sub-region tracker with weighted multiple-instance feature selection and
/// coarse-to-fine detection.
///
/// A failed track() leaves the tracker exactly as it was before the call.
class Tracker {
 public:
  Tracker(const Frame& frame, const BoundingBox& init_box, const TrackerConfig& config);

  /// Resumes from a previously captured (or hand-built) state.
  explicit Tracker(TrackerState state) : state_(std::move(state)) {}

  TrackResult track(const Frame& frame);

  /// Scores every lattice position within `radius` (grid `step`) of `center`
  /// with the current strong classifier. Ties resolve to the first position
  /// in scan order. Throws TrackingLost when no candidate fits the frame.
  Detection detect(const IntegralImage& ii, Point center, double radius, int step) const;

  const TrackerState& state() const { return state_; }
  const BoundingBox& position() const { return state_.position; }

 private:
  TrackerState state_;
};

/// Per-sub-region occlusion flags from the full feature vector of the
/// tracked sample. A region is flagged when the mean weak log-ratio of the
/// selected features rooted in it falls below the occlusion threshold;
/// regions without selected features are never flagged.
std::vector<bool> gate_occluded_subregions(const TrackerState& state, std::span<const double> tracked_features);

/// Score of the sample at `origin` under the selected strong classifier.
double score_sample(const IntegralImage& ii, Point origin, const FeaturePool& pool, const ClassifierPool& classifier,
                    std::span<const std::size_t> selected);

}  // namespace sctrack
