#ifndef GPAC_OPTIMIZER_HPP
#define GPAC_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gpac/graph.hpp"
#include "gpac/types.hpp"

namespace gpac {

/// Per-sample fuzzy and hard clustering scores. After the negative-score
/// guard the minimum of s_p is exactly 1.
struct ScorePair {
  std::vector<double> s_p;
  std::vector<double> s_v;
};

/// Running column sums of the fuzzy and (one-hot) hard matrices.
struct AggregateState {
  std::vector<double> p_tilde;
  std::vector<double> v_tilde;
  std::size_t epoch = 0;
  double beta_current = 0.0;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double objective = 0.0;
  std::size_t labels_changed = 0;
  double beta = 0.0;
  double elapsed_ms = 0.0;
};

struct FitTimings {
  double graph_ms = 0.0;
  double optimize_ms = 0.0;
  double total_ms = 0.0;
};

struct FitResult {
  FuzzyPartition partition;
  HardPartition assignment;  // argmax over the fuzzy rows
  std::vector<EpochRecord> trace;
  FitTimings timings;
};

/// Shifts scores so the minimum lands exactly at 1; order preserving.
void guard_scores(std::span<double> s_p);

/// p_l proportional to s_l^(-1/(m-1)) for strictly positive values,
/// evaluated in the log domain with max subtraction.
std::vector<double> fuzzy_from_scores(std::span<const double> scores,
                                      double m);

/// Convex combination (p_star + beta * p_bar) / (1 + beta).
std::vector<double> project_local_consistency(std::span<const double> p_star,
                                              std::span<const double> p_bar,
                                              double beta);

/// Argmin over clusters, ties broken by lowest index.
std::size_t hard_from_scores(std::span<const double> s_v);

/// Uniform fuzzy matrix together with the configured hard initialization
/// (k-means++ nearest-seed, uniform random, or all-zero labels).
std::pair<FuzzyPartition, HardPartition> init_partitions(
    const Dataset& data, const GpacConfig& config);

struct GraphPair {
  KnnGraph knn;
  AdjacencyIndicator adjacency;
};

/// Similarity graph plus expanded adjacency per config (theta from the
/// log_k(n/c) rule unless overridden).
GraphPair build_graphs(const Dataset& data, const GpacConfig& config);

/// Exact objective: hard and fuzzy self-terms via column aggregates plus
/// the alpha-weighted neighborhood agreement term. O(n * (c + |A_i|)).
double objective_value(const FuzzyPartition& partition,
                       std::span<const std::int64_t> hard_labels,
                       const AdjacencyIndicator& adjacency, double alpha,
                       double m);

/// Alternating solver over one dataset. Per-sample updates within a batch
/// are strictly sequential (Gauss-Seidel); one solver instance per thread.
class GpacSolver {
 public:
  GpacSolver(const Dataset& data, GpacConfig config);

  /// Reuse prebuilt graphs (must match the config and outlive the solver).
  void attach_graphs(const GraphPair* graphs);

  /// Builds graphs if needed and initializes the partitions. Idempotent.
  void prepare();

  /// One pass over all samples in shuffled disjoint batches; returns the
  /// number of hard labels that changed.
  std::size_t run_epoch();

  /// prepare() plus epochs until the changed fraction drops below the
  /// convergence tolerance or max_epochs is reached.
  FitResult fit();

  const GpacConfig& config() const { return cfg_; }
  const FuzzyPartition& partition() const { return partition_; }
  std::span<const std::int64_t> hard_labels() const { return hard_labels_; }
  std::vector<std::int64_t> predictions() const;  // argmax per row
  const KnnGraph& knn() const { return graphs().knn; }
  const AdjacencyIndicator& adjacency() const { return graphs().adjacency; }
  AggregateState aggregates() const;
  double beta_current() const { return beta_; }
  std::size_t epoch() const { return epoch_; }
  double graph_build_ms() const { return graph_ms_; }

  /// Exact objective for modest adjacency sizes, row-sampled estimate above
  /// the internal threshold (used for the per-epoch trace).
  double objective() const;

  /// Test/monitoring hook, called per sample update with the raw scores
  /// (before the guard).
  std::function<void(std::size_t sample, const ScorePair&)> score_observer;

 private:
  const GraphPair& graphs() const {
    return shared_graphs_ ? *shared_graphs_ : owned_graphs_;
  }
  void recompute_aggregates();
  void accumulate_scores(std::size_t i, std::span<const std::int32_t> batch);
  void kahan_add(std::size_t l, double x);
  void add_row(std::span<const double> row, double sign);
  void set_row(std::size_t i, std::span<const double> values);
  double beta_for_epoch(std::size_t epoch) const;

  const Dataset& data_;
  GpacConfig cfg_;
  const GraphPair* shared_graphs_ = nullptr;
  GraphPair owned_graphs_;
  bool prepared_ = false;

  FuzzyPartition partition_;
  std::vector<double> pow_cache_;  // elementwise p^m, maintained with P
  std::vector<std::int64_t> hard_labels_;

  std::vector<double> p_tilde_, p_tilde_comp_;  // compensated running sums
  std::vector<double> v_tilde_;
  std::vector<std::uint8_t> in_batch_;
  std::vector<std::int32_t> order_;
  std::mt19937_64 rng_;
  std::size_t epoch_ = 0;
  double beta_ = 0.0;
  double graph_ms_ = 0.0;

  std::vector<double> s_p_, s_v_, p_bar_, p_new_;  // scratch
};

/// Convenience one-shot entry point.
FitResult fit(const Dataset& data, const GpacConfig& config);

}  // namespace gpac

#endif  // GPAC_OPTIMIZER_HPP
