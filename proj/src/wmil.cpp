#include "sctrack/wmil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sctrack/error.hpp"

namespace sctrack {

std::vector<double> positive_weights(std::span<const Point> positions, Point tracked) {
  if (positions.empty()) {
    throw InvalidInput("positive weights need at least one position");
  }
  std::vector<double> dist(positions.size());
  for (std::size_t j = 0; j < positions.size(); ++j) dist[j] = distance(positions[j], tracked);
  // Shifting by the nearest distance cancels in the normalization and keeps
  // the largest term at exp(0).
  const double nearest = *std::min_element(dist.begin(), dist.end());
  std::vector<double> w(positions.size());
  double nc = 0.0;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    w[j] = std::exp(-(dist[j] - nearest));
    nc += w[j];
  }
  for (double& v : w) v /= nc;
  return w;
}

double instance_probability(double score) {
  if (score >= 0.0) {
    return 1.0 / (1.0 + std::exp(-score));
  }
  const double e = std::exp(score);
  return e / (1.0 + e);
}

double positive_bag_probability(std::span<const double> instance_probs, std::span<const double> weights) {
  if (instance_probs.size() != weights.size() || instance_probs.empty()) {
    throw InvalidInput("positive bag probability needs matching non-empty probabilities and weights");
  }
  double p = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) p += weights[j] * instance_probs[j];
  return p;
}

double negative_bag_probability(std::span<const double> instance_probs) {
  if (instance_probs.empty()) {
    throw InvalidInput("negative bag probability needs at least one instance");
  }
  double p = 0.0;
  for (double v : instance_probs) p += 1.0 - v;
  return p / static_cast<double>(instance_probs.size());
}

double bag_log_likelihood(double positive_bag_prob, double negative_bag_prob) {
  const auto clamp = [](double p) { return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp); };
  return std::log(clamp(positive_bag_prob)) + std::log(clamp(negative_bag_prob));
}

namespace {

// Weak log-ratio of every (feature, instance) pair, feature-major.
std::vector<double> weak_table(const ClassifierPool& pool, const FeatureMatrix& samples) {
  const std::size_t m = pool.size();
  const std::size_t n = samples.rows();
  std::vector<double> table(m * n);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t i = 0; i < n; ++i) {
      table[f * n + i] = weak_log_ratio(samples(i, f), pool.params[f]);
    }
  }
  return table;
}

}  // namespace

SelectionResult select_features(const ClassifierPool& pool, const SampleBag& positive_bag,
                                const SampleBag& negative_bag, std::size_t k, const std::vector<bool>& candidates) {
  const std::size_t m = pool.size();
  if (positive_bag.size() == 0 || negative_bag.size() == 0) {
    throw InvalidInput("feature selection needs non-empty bags");
  }
  if (positive_bag.features.rows() != positive_bag.size() || negative_bag.features.rows() != negative_bag.size() ||
      positive_bag.features.cols() != m || negative_bag.features.cols() != m) {
    throw InvalidInput("bag feature matrices do not match the classifier pool");
  }
  if (positive_bag.weights.size() != positive_bag.size()) {
    throw InvalidInput("positive bag needs one weight per instance");
  }
  if (!candidates.empty() && candidates.size() != m) {
    throw InvalidInput("candidate mask size does not match the classifier pool");
  }
  const std::size_t available =
      candidates.empty() ? m : static_cast<std::size_t>(std::count(candidates.begin(), candidates.end(), true));
  if (k > available) {
    throw InvalidConfig("cannot select " + std::to_string(k) + " features from " + std::to_string(available) +
                        " candidates");
  }

  const std::size_t n_pos = positive_bag.size();
  const std::size_t n_neg = negative_bag.size();
  const std::vector<double> pos_table = weak_table(pool, positive_bag.features);
  const std::vector<double> neg_table = weak_table(pool, negative_bag.features);

  std::vector<double> h_pos(n_pos, 0.0);
  std::vector<double> h_neg(n_neg, 0.0);
  std::vector<bool> taken(m, false);
  if (!candidates.empty()) {
    for (std::size_t f = 0; f < m; ++f) taken[f] = !candidates[f];
  }
  std::vector<double> probs_pos(n_pos);
  std::vector<double> probs_neg(n_neg);

  SelectionResult result;
  result.selected.reserve(k);
  result.likelihood_trace.reserve(k);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = m;
    double best_l = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < m; ++f) {
      if (taken[f]) continue;
      const double* pos_row = pos_table.data() + f * n_pos;
      const double* neg_row = neg_table.data() + f * n_neg;
      for (std::size_t i = 0; i < n_pos; ++i) probs_pos[i] = instance_probability(h_pos[i] + pos_row[i]);
      for (std::size_t i = 0; i < n_neg; ++i) probs_neg[i] = instance_probability(h_neg[i] + neg_row[i]);
      const double l = bag_log_likelihood(positive_bag_probability(probs_pos, positive_bag.weights),
                                          negative_bag_probability(probs_neg));
      if (best == m || l > best_l) {
        best = f;
        best_l = l;
      }
    }
    taken[best] = true;
    result.selected.push_back(best);
    result.likelihood_trace.push_back(best_l);
    for (std::size_t i = 0; i < n_pos; ++i) h_pos[i] += pos_table[best * n_pos + i];
    for (std::size_t i = 0; i < n_neg; ++i) h_neg[i] += neg_table[best * n_neg + i];
  }
  return result;
}

}  // namespace sctrack
