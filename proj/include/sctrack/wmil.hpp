#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sctrack/classifier.hpp"
#include "sctrack/features.hpp"
#include "sctrack/geometry.hpp"

namespace sctrack {

/// Labeled set of sample instances. Positive bags carry importance weights
/// summing to one; negative bags are averaged uniformly.
struct SampleBag {
  Label label = Label::negative;
  std::vector<Point> positions;
  FeatureMatrix features;
  std::vector<double> weights;

  std::size_t size() const { return positions.size(); }
};

/// weight_j = exp(-|p_j - tracked|) / nc, normalized to sum to one.
std::vector<double> positive_weights(std::span<const Point> positions, Point tracked);

/// Logistic link from a classifier score to p(y = 1 | x).
double instance_probability(double score);

/// p(y=1 | X+) = sum_j w_j p_j.
double positive_bag_probability(std::span<const double> instance_probs, std::span<const double> weights);

/// p(y=0 | X-) = mean_j (1 - p_j).
double negative_bag_probability(std::span<const double> instance_probs);

inline constexpr double kProbabilityClamp = 1e-12;

/// log p(y=1|X+) + log p(y=0|X-), both clamped to [eps, 1 - eps].
double bag_log_likelihood(double positive_bag_prob, double negative_bag_prob);

struct SelectionResult {
  std::vector<std::size_t> selected;
  std::vector<double> likelihood_trace;
};

/// Greedy bag-likelihood selection of `k` weak classifiers. At each step the
/// unselected feature maximizing L(H_{k-1} + h) is picked; ties go to the
/// lowest index. `candidates`, when non-empty, restricts which features may
/// be picked. Throws InvalidConfig when fewer than `k` candidates exist.
SelectionResult select_features(const ClassifierPool& pool, const SampleBag& positive_bag,
                                const SampleBag& negative_bag, std::size_t k,
                                const std::vector<bool>& candidates = {});

}  // namespace sctrack
