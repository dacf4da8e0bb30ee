#include "sctrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sctrack/error.hpp"

namespace sctrack {

void TrackerConfig::validate() const {
  const auto fail = [](const std::string& what) { throw InvalidConfig("config constraint violated: " + what); };
  if (!(alpha > 0.0)) fail("alpha > 0");
  if (!(alpha < delta)) fail("alpha < delta");
  if (!(delta < beta)) fail("delta < beta");
  if (n_negatives < 1) fail("n_negatives >= 1");
  if (n_s < 1) fail("n_s >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail("0 <= lambda <= 1");
  if (m_features < 1) fail("m_features >= 1");
  if (k_selected < 1) fail("k_selected >= 1");
  if (k_selected > m_features) fail("k_selected <= m_features");
  if (omega_f < 1) fail("omega_f >= 1");
  if (!(omega_c > omega_f)) fail("omega_c > omega_f");
  if (!(r_f > 0.0)) fail("r_f > 0");
  if (!(r_f <= r_c)) fail("r_f <= r_c");
  if (!(subregion_fraction > 0.0 && subregion_fraction <= 1.0)) fail("0 < subregion_fraction <= 1");
  if (!(beta_min > 0.0 && beta_min <= beta_max && beta_max <= 1.0)) fail("0 < beta_min <= beta_max <= 1");
  if (w_min < 1) fail("w_min >= 1");
  if (h_min < 1) fail("h_min >= 1");
  if (!(sigma_floor > 0.0)) fail("sigma_floor > 0");
  if (!std::isfinite(occlusion_threshold)) fail("occlusion_threshold finite");
}

FeatureConfig TrackerConfig::feature_config() const {
  FeatureConfig fc;
  fc.min_width = w_min;
  fc.min_height = h_min;
  fc.beta_min = beta_min;
  fc.beta_max = beta_max;
  return fc;
}

Size TrackerConfig::subregion_size(Size sample) const {
  return {std::max(1, static_cast<int>(std::ceil(sample.width * subregion_fraction - 1e-9))),
          std::max(1, static_cast<int>(std::ceil(sample.height * subregion_fraction - 1e-9)))};
}

double score_sample(const IntegralImage& ii, Point origin, const FeaturePool& pool, const ClassifierPool& classifier,
                    std::span<const std::size_t> selected) {
  double sum = 0.0;
  for (std::size_t idx : selected) {
    sum += weak_log_ratio(feature_value(ii, origin, pool, idx), classifier.params[idx]);
  }
  return sum;
}

namespace {

SampleBag make_bag(const IntegralImage& ii, Label label, std::vector<Point> positions, const FeaturePool& pool) {
  SampleBag bag;
  bag.label = label;
  bag.features = extract_features(ii, positions, pool);
  bag.positions = std::move(positions);
  return bag;
}

// Crops both bags around state.position, updates the classifier and reruns
// selection. `initial` replaces the statistics outright and skips gating.
void learn(TrackerState& state, const IntegralImage& ii, bool initial, FrameDiagnostics& diag) {
  const TrackerConfig& cfg = state.config;
  const Size frame = state.frame_size;
  const Size sample = state.position.size();
  const Point here = state.position.origin();

  std::vector<Point> pos_positions = enumerate_positions({here, 0.0, cfg.alpha, 1}, sample, frame);
  const std::vector<Point> ring = enumerate_positions({here, cfg.delta, cfg.beta, 1}, sample, frame);
  std::vector<Point> neg_positions = subsample_positions(ring, cfg.n_negatives, state.rng);
  diag.positives = pos_positions.size();
  diag.negatives = neg_positions.size();
  diag.occluded.assign(state.pool.layout.count(), false);
  if (neg_positions.empty()) {
    if (initial) {
      throw InvalidInput("frame leaves no room for negative samples around the target");
    }
    return;
  }

  SampleBag positives = make_bag(ii, Label::positive, std::move(pos_positions), state.pool);
  positives.weights = positive_weights(positives.positions, here);
  SampleBag negatives = make_bag(ii, Label::negative, std::move(neg_positions), state.pool);

  std::vector<bool> mask;
  if (!initial && cfg.occlusion_gating) {
    const auto it = std::find(positives.positions.begin(), positives.positions.end(), here);
    const std::size_t row = static_cast<std::size_t>(it - positives.positions.begin());
    diag.occluded = gate_occluded_subregions(state, positives.features.row(row));
    const auto flagged = static_cast<std::size_t>(std::count(diag.occluded.begin(), diag.occluded.end(), true));
    if (flagged > 0 && flagged < diag.occluded.size()) {
      mask.assign(state.pool.size(), true);
      for (std::size_t f = 0; f < state.pool.size(); ++f) {
        if (diag.occluded[state.pool.templates[f].region]) mask[f] = false;
      }
      if (static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)) < cfg.k_selected) {
        mask.clear();
      }
    }
  }
  diag.gating_applied = !mask.empty();

  const double lambda = initial ? 0.0 : cfg.lambda;
  update_pool(state.classifier, positives.features, positives.weights, Label::positive, lambda, mask);
  update_pool(state.classifier, negatives.features, {}, Label::negative, lambda, mask);
  state.selected = select_features(state.classifier, positives, negatives, cfg.k_selected, mask).selected;
}

}  // namespace

Tracker::Tracker(const Frame& frame, const BoundingBox& init_box, const TrackerConfig& config) {
  config.validate();
  if (!init_box.inside(frame.size())) {
    throw OutOfBounds("initial box lies outside the first frame");
  }
  state_.config = config;
  state_.rng.seed(config.rng_seed);
  state_.position = init_box;
  state_.frame_size = frame.size();
  state_.frame_index = frame.index;

  const Size sample = init_box.size();
  const SubRegionLayout layout = generate_layout(sample, config.subregion_size(sample), config.n_s, state_.rng);
  state_.pool = generate_pool(layout, config.m_features, config.feature_config(), state_.rng);
  state_.classifier.params.assign(config.m_features, GaussianPair{});
  state_.classifier.lambda = config.lambda;
  state_.classifier.sigma_floor = config.sigma_floor;

  const IntegralImage ii(frame);
  FrameDiagnostics diag;
  learn(state_, ii, true, diag);
}

Detection Tracker::detect(const IntegralImage& ii, Point center, double radius, int step) const {
  const std::vector<Point> candidates =
      enumerate_positions({center, 0.0, radius, step}, state_.position.size(), {ii.width(), ii.height()});
  if (candidates.empty()) {
    throw TrackingLost("no detection candidate fits the frame around (" + std::to_string(center.x) + "," +
                       std::to_string(center.y) + ")");
  }
  Detection best{candidates.front(), 0.0, candidates.size()};
  bool first = true;
  for (const Point& p : candidates) {
    const double s = score_sample(ii, p, state_.pool, state_.classifier, state_.selected);
    if (first || s > best.score) {
      best.position = p;
      best.score = s;
      first = false;
    }
  }
  return best;
}

std::vector<bool> gate_occluded_subregions(const TrackerState& state, std::span<const double> features) {
  const std::size_t regions = state.pool.layout.count();
  std::vector<double> sum(regions, 0.0);
  std::vector<std::size_t> count(regions, 0);
  for (std::size_t idx : state.selected) {
    const std::size_t reg = state.pool.templates[idx].region;
    sum[reg] += weak_log_ratio(features[idx], state.classifier.params[idx]);
    ++count[reg];
  }
  std::vector<bool> flags(regions, false);
  for (std::size_t r = 0; r < regions; ++r) {
    flags[r] = count[r] > 0 && sum[r] / static_cast<double>(count[r]) < state.config.occlusion_threshold;
  }
  return flags;
}

TrackResult Tracker::track(const Frame& frame) {
  if (frame.size() != state_.frame_size) {
    throw InvalidInput("frame is " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
                       " but the tracker was initialized on " + std::to_string(state_.frame_size.width) + "x" +
                       std::to_string(state_.frame_size.height));
  }
  const IntegralImage ii(frame);
  TrackResult result;
  FrameDiagnostics& diag = result.diagnostics;
  const Detection coarse = detect(ii, state_.position.origin(), state_.config.r_c, state_.config.omega_c);
  const Detection fine = detect(ii, coarse.position, state_.config.r_f, state_.config.omega_f);
  diag.coarse_score = coarse.score;
  diag.coarse_candidates = coarse.candidates;
  diag.fine_score = fine.score;
  diag.fine_candidates = fine.candidates;

  TrackerState next = state_;
  next.position = next.position.moved_to(fine.position);
  next.frame_index = frame.index;
  learn(next, ii, false, diag);

  state_ = std::move(next);
  diag.frame_index = frame.index;
  diag.position = state_.position;
  result.box = state_.position;
  return result;
}

}  // namespace sctrack
