#include "gpac/types.hpp"

#include <cmath>

namespace gpac {

Dataset::Dataset(std::vector<double> feats, std::size_t n_samples,
                 std::size_t dim, std::vector<std::int64_t> truth)
    : features(std::move(feats)), labels(std::move(truth)), n(n_samples), d(dim) {
  if (n < 2) throw InvalidArgument("dataset needs at least 2 samples");
  if (d < 1) throw InvalidArgument("dataset needs at least 1 feature");
  if (features.size() != n * d)
    throw InvalidArgument("feature buffer size does not match n*d");
  for (double v : features) {
    if (!std::isfinite(v))
      throw InvalidArgument("dataset contains a non-finite feature value");
  }
  if (!labels.empty() && labels.size() != n)
    throw InvalidArgument("label count does not match sample count");
}

void FuzzyPartition::validate(double tol) const {
  if (probs.size() != n * c)
    throw InvalidArgument("partition buffer size does not match n*c");
  std::vector<double> col_sums(c, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t l = 0; l < c; ++l) {
      double p = probs[i * c + l];
      if (!(p >= 0.0 && p <= 1.0 + tol))
        throw InvalidArgument("membership outside [0,1]");
      row_sum += p;
      col_sums[l] += p;
    }
    if (std::abs(row_sum - 1.0) > tol)
      throw InvalidArgument("membership row does not sum to 1");
  }
  for (std::size_t l = 0; l < c; ++l) {
    if (!(col_sums[l] > 0.0 && col_sums[l] < static_cast<double>(n)))
      throw InvalidArgument("column sum outside the feasible range (0, n)");
  }
}

void HardPartition::validate() const {
  for (std::int64_t v : labels) {
    if (v < 0 || v >= c) throw InvalidArgument("cluster id out of range");
  }
}

std::vector<double> HardPartition::to_one_hot() const {
  validate();
  std::vector<double> m(labels.size() * static_cast<std::size_t>(c), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    m[i * c + static_cast<std::size_t>(labels[i])] = 1.0;
  return m;
}

HardPartition HardPartition::from_one_hot(std::span<const double> matrix,
                                          std::size_t n, std::size_t c) {
  if (matrix.size() != n * c)
    throw InvalidArgument("one-hot buffer size does not match n*c");
  HardPartition out;
  out.c = static_cast<std::int64_t>(c);
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t hits = 0;
    for (std::size_t l = 0; l < c; ++l) {
      double v = matrix[i * c + l];
      if (v == 1.0) {
        out.labels[i] = static_cast<std::int64_t>(l);
        ++hits;
      } else if (v != 0.0) {
        throw InvalidArgument("one-hot matrix contains a value other than 0/1");
      }
    }
    if (hits != 1)
      throw InvalidArgument("one-hot row must contain exactly one 1");
  }
  return out;
}

GpacConfig validate_config(GpacConfig config, const Dataset& data) {
  if (config.clusters < 2)
    throw InvalidArgument("cluster count must be at least 2");
  if (config.clusters > data.n)
    throw InvalidArgument("cluster count exceeds sample count");
  if (config.m <= 1.0)
    throw InvalidArgument(
        "fuzzy exponent m must be greater than 1 (the exponent -1/(m-1) is "
        "undefined at m=1)");
  if (!config.allow_extreme_m && config.m < 1.0 + 1.0 / 64.0)
    throw InvalidArgument(
        "fuzzy exponent m below 1+1/64 pushes the score exponent past 64; "
        "set allow_extreme_m to override");
  if (config.alpha <= 0.0) throw InvalidArgument("alpha must be positive");
  if (config.beta_max < 0.0)
    throw InvalidArgument("beta_max must be nonnegative");
  if (config.k < 1) throw InvalidArgument("neighbor count k must be >= 1");
  if (config.k >= data.n)
    throw InvalidArgument("neighbor count k must be smaller than n");
  if (config.theta_override && *config.theta_override < 1)
    throw InvalidArgument("theta override must be >= 1");
  if (config.sigma_override && !(*config.sigma_override > 0.0))
    throw InvalidArgument("sigma override must be positive");
  if (config.batch_size < 1)
    throw InvalidArgument("batch size must be >= 1");
  if (config.convergence_tol < 0.0 || config.convergence_tol > 1.0)
    throw InvalidArgument("convergence tolerance must lie in [0,1]");
  return config;
}

FuzzyPartition row_normalize(std::vector<double> matrix, std::size_t n,
                             std::size_t c) {
  if (matrix.size() != n * c)
    throw InvalidArgument("matrix buffer size does not match n*c");
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t l = 0; l < c; ++l) {
      double v = matrix[i * c + l];
      if (!std::isfinite(v) || v < 0.0)
        throw InvalidArgument("row " + std::to_string(i) +
                              " contains a negative or non-finite value");
      sum += v;
    }
    if (!(sum > 0.0))
      throw InvalidArgument("row " + std::to_string(i) + " sums to zero");
    for (std::size_t l = 0; l < c; ++l) matrix[i * c + l] /= sum;
  }
  FuzzyPartition out;
  out.probs = std::move(matrix);
  out.n = n;
  out.c = c;
  return out;
}

}  // namespace gpac
