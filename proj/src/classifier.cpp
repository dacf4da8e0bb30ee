#include "sctrack/classifier.hpp"

#include <cmath>
#include <string>

#include "sctrack/error.hpp"

namespace sctrack {

double weak_log_ratio(double value, const GaussianPair& p) {
  const double z1 = (value - p.mu1) / p.sigma1;
  const double z0 = (value - p.mu0) / p.sigma0;
  return std::log(p.sigma0 / p.sigma1) - 0.5 * z1 * z1 + 0.5 * z0 * z0;
}

double strong_response(std::span<const double> features, const ClassifierPool& pool,
                       std::span<const std::size_t> selected) {
  if (selected.empty()) {
    throw InvalidInput("strong response needs at least one selected feature");
  }
  double sum = 0.0;
  for (std::size_t idx : selected) {
    if (idx >= features.size() || idx >= pool.params.size()) {
      throw InvalidInput("selected feature index " + std::to_string(idx) + " out of range");
    }
    sum += weak_log_ratio(features[idx], pool.params[idx]);
  }
  return sum;
}

BatchMoments batch_moments(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) {
    throw InvalidInput("batch statistics need at least one value");
  }
  if (!weights.empty() && weights.size() != values.size()) {
    throw InvalidInput("weight count does not match value count");
  }
  BatchMoments m;
  if (weights.empty()) {
    const double n = static_cast<double>(values.size());
    for (double v : values) m.mean += v;
    m.mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - m.mean) * (v - m.mean);
    m.stddev = std::sqrt(var / n);
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) m.mean += weights[i] * values[i];
    double var = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      var += weights[i] * (values[i] - m.mean) * (values[i] - m.mean);
    }
    m.stddev = std::sqrt(var);
  }
  return m;
}

GaussianPair update_pair(const GaussianPair& p, std::span<const double> values, std::span<const double> weights,
                         Label label, double lambda, double sigma_floor) {
  const BatchMoments b = batch_moments(values, weights);
  GaussianPair out = p;
  double& mu = label == Label::positive ? out.mu1 : out.mu0;
  double& sigma = label == Label::positive ? out.sigma1 : out.sigma0;
  const double diff = mu - b.mean;
  const double var = lambda * sigma * sigma + (1.0 - lambda) * b.stddev * b.stddev + lambda * (1.0 - lambda) * diff * diff;
  mu = lambda * mu + (1.0 - lambda) * b.mean;
  sigma = std::sqrt(var);
  if (!(sigma >= sigma_floor)) {
    sigma = sigma_floor;
  }
  return out;
}

void update_pool(ClassifierPool& pool, const FeatureMatrix& samples, std::span<const double> weights, Label label,
                 double lambda, const std::vector<bool>& mask) {
  if (samples.cols() != pool.size()) {
    throw InvalidInput("sample matrix width does not match classifier pool size");
  }
  std::vector<double> column(samples.rows());
  for (std::size_t f = 0; f < pool.size(); ++f) {
    if (!mask.empty() && !mask[f]) continue;
    for (std::size_t r = 0; r < samples.rows(); ++r) column[r] = samples(r, f);
    pool.params[f] = update_pair(pool.params[f], column, weights, label, lambda, pool.sigma_floor);
  }
}

}  // namespace sctrack
