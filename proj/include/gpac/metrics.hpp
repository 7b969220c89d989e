#ifndef GPAC_METRICS_HPP
#define GPAC_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace gpac {

/// Co-occurrence counts between predicted and true clusters.
struct Contingency {
  std::size_t rows = 0;  // predicted clusters
  std::size_t cols = 0;  // true clusters
  std::vector<std::int64_t> counts;  // rows * cols
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  static Contingency build(std::span<const std::int64_t> pred,
                           std::span<const std::int64_t> truth);
  std::int64_t at(std::size_t u, std::size_t v) const {
    return counts[u * cols + v];
  }
};

enum class NmiNorm { kArithmetic, kSqrt };

/// Normalized mutual information. Arithmetic-mean normalization by default;
/// 1.0 when both partitions are single-cluster, 0 when exactly one is.
double nmi(std::span<const std::int64_t> pred,
           std::span<const std::int64_t> truth,
           NmiNorm norm = NmiNorm::kArithmetic);

/// Clustering accuracy: best injective cluster-to-class matching (maximum
/// weight bipartite matching on the contingency matrix), matched fraction.
double acc(std::span<const std::int64_t> pred,
           std::span<const std::int64_t> truth);

/// Adjusted Rand index in [-1, 1]; 1.0 when the pair-counting denominator
/// degenerates (both partitions trivially identical).
double ari(std::span<const std::int64_t> pred,
           std::span<const std::int64_t> truth);

namespace detail {
/// Total count covered by the optimal assignment on a contingency matrix.
std::int64_t max_assignment(const Contingency& table);
}  // namespace detail

}  // namespace gpac

#endif  // GPAC_METRICS_HPP
