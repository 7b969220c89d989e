#ifndef GPAC_TYPES_HPP
#define GPAC_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpac {

/// Base error type for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when a numeric routine produces a non-finite value despite
/// stabilization; indicates an internal bug rather than bad user input.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Dense n x d feature matrix with optional ground-truth labels.
struct Dataset {
  std::vector<double> features;       // row-major, n * d
  std::vector<std::int64_t> labels;   // empty when no ground truth
  std::size_t n = 0;
  std::size_t d = 0;

  Dataset() = default;
  Dataset(std::vector<double> feats, std::size_t n_samples, std::size_t dim,
          std::vector<std::int64_t> truth = {});

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * d, d};
  }
  bool has_labels() const { return !labels.empty(); }
};

/// Row-stochastic n x c membership matrix; the primary clustering output.
struct FuzzyPartition {
  std::vector<double> probs;  // row-major, n * c
  std::size_t n = 0;
  std::size_t c = 0;

  FuzzyPartition() = default;
  FuzzyPartition(std::size_t n_samples, std::size_t clusters, double fill = 0.0)
      : probs(n_samples * clusters, fill), n(n_samples), c(clusters) {}

  std::span<const double> row(std::size_t i) const {
    return {probs.data() + i * c, c};
  }
  std::span<double> row(std::size_t i) {
    return {probs.data() + i * c, c};
  }

  /// Throws unless rows sum to 1 within tol, entries lie in [0,1], and every
  /// column sum is strictly between 0 and n.
  void validate(double tol = 1e-9) const;
};

/// One cluster id per sample; logically the one-hot matrix V.
struct HardPartition {
  std::vector<std::int64_t> labels;
  std::int64_t c = 0;

  std::size_t size() const { return labels.size(); }
  void validate() const;

  std::vector<double> to_one_hot() const;  // n * c, row-major
  static HardPartition from_one_hot(std::span<const double> matrix,
                                    std::size_t n, std::size_t c);
};

enum class InitMode { kKmeansPlusPlus, kRandom, kZero };

/// Hard-assignment update rule: score-based per the solver, or tracking
/// argmax of the fuzzy matrix (used by the ablation experiments).
enum class HardUpdate { kScore, kArgmaxP };

struct GpacConfig {
  std::size_t clusters = 0;  // required, >= 2
  double m = 1.05;           // fuzzy weighting exponent, > 1
  double alpha = 1.0;        // neighborhood vote weight
  double beta_max = 1.0;     // local-consistency weight ceiling
  std::size_t beta_ramp_epochs = 10;
  std::size_t k = 10;        // neighbor count for the similarity graph
  std::optional<std::size_t> theta_override;  // expansion depth, >= 1
  std::optional<double> sigma_override;       // kernel bandwidth, > 0
  std::size_t batch_size = 1024;
  std::size_t max_epochs = 100;
  double convergence_tol = 1e-3;  // stop when changed fraction drops below
  std::uint64_t seed = 0;
  InitMode init_mode = InitMode::kKmeansPlusPlus;
  HardUpdate hard_update = HardUpdate::kScore;
  /// Permits m below the default floor of 1 + 1/64 (exponents beyond 64).
  bool allow_extreme_m = false;
};

/// Checks config against the dataset and returns it with the library
/// defaults already filled in by the struct initializers. Throws
/// InvalidArgument on inconsistent settings.
GpacConfig validate_config(GpacConfig config, const Dataset& data);

/// Divides each row of a nonnegative matrix by its sum. Throws when a row
/// sums to zero or contains a non-finite value.
FuzzyPartition row_normalize(std::vector<double> matrix, std::size_t n,
                             std::size_t c);

}  // namespace gpac

#endif  // GPAC_TYPES_HPP
