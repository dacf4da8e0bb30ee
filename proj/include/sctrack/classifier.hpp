#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sctrack/features.hpp"

namespace sctrack {

enum class Label { negative = 0, positive = 1 };

/// Class-conditional Gaussian statistics of one feature.
struct GaussianPair {
  double mu1 = 0.0;
  double sigma1 = 1.0;
  double mu0 = 0.0;
  double sigma0 = 1.0;

  friend bool operator==(const GaussianPair&, const GaussianPair&) = default;
};

/// log N(value; mu1, sigma1) - log N(value; mu0, sigma0), evaluated in log space.
double weak_log_ratio(double value, const GaussianPair& p);

struct ClassifierPool {
  std::vector<GaussianPair> params;
  double lambda = 0.9;
  double sigma_floor = 1e-2;

  std::size_t size() const { return params.size(); }
};

/// Sum of weak log-ratios over `selected`. `features` is indexed by feature id.
/// Throws InvalidInput on an empty selection or an index out of range.
double strong_response(std::span<const double> features, const ClassifierPool& pool,
                       std::span<const std::size_t> selected);

/// Mean and (population) standard deviation of a batch.
struct BatchMoments {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Uniform moments when `weights` is empty; weighted moments otherwise
/// (weights are non-negative and sum to one).
BatchMoments batch_moments(std::span<const double> values, std::span<const double> weights = {});

/// Blends the batch statistics of `values` into the `label` side of `p`:
///   mu    <- lambda*mu + (1-lambda)*mu_b
///   sigma <- sqrt(lambda*sigma^2 + (1-lambda)*sigma_b^2 + lambda*(1-lambda)*(mu-mu_b)^2)
/// The resulting sigma never drops below `sigma_floor`.
GaussianPair update_pair(const GaussianPair& p, std::span<const double> values, std::span<const double> weights,
                         Label label, double lambda, double sigma_floor);

/// Applies update_pair to every feature whose `mask` entry is true (all
/// features when `mask` is empty), one column of `samples` per feature.
void update_pool(ClassifierPool& pool, const FeatureMatrix& samples, std::span<const double> weights, Label label,
                 double lambda, const std::vector<bool>& mask = {});

}  // namespace sctrack
