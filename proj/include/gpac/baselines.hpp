#ifndef GPAC_BASELINES_HPP
#define GPAC_BASELINES_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gpac/graph.hpp"
#include "gpac/types.hpp"

namespace gpac {

struct Centroids {
  std::vector<double> centers;  // row-major, c * d
  std::size_t c = 0;
  std::size_t d = 0;
  std::vector<std::int64_t> counts;  // members per cluster after assignment

  std::span<const double> row(std::size_t l) const {
    return {centers.data() + l * d, d};
  }
};

/// D^2-weighted seeding. Deterministic for a fixed generator state; throws
/// when the dataset has fewer than c distinct points.
Centroids kmeanspp_seed(const Dataset& data, std::size_t c,
                        std::mt19937_64& rng);

struct KmeansResult {
  HardPartition assignment;
  Centroids centroids;
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> inertia_trace;  // one entry per assignment pass
};

/// Lloyd iterations from a k-means++ seeding. max_iters = 0 yields the
/// nearest-seed assignment only. Empty clusters are repaired by reseeding
/// to the point farthest from its current center.
KmeansResult kmeans_fit(const Dataset& data, std::size_t c,
                        std::uint64_t seed, std::size_t max_iters = 100);

struct FcmResult {
  FuzzyPartition partition;
  Centroids centroids;
  std::size_t iterations = 0;
  std::vector<double> objective_trace;
};

/// Fuzzy c-means: alternates p^m-weighted center updates with the inverse
/// squared-distance membership update; stops when max |delta P| < tol.
FcmResult fcm_fit(const Dataset& data, std::size_t c, double m,
                  std::uint64_t seed, double tol = 1e-6,
                  std::size_t max_iters = 300);

/// FCM where every membership update is followed by the local-consistency
/// projection against the degree-weighted neighbor average on the graph.
FcmResult fcm_lcc_fit(const Dataset& data, std::size_t c, double m,
                      double beta, const KnnGraph& graph, std::uint64_t seed,
                      double tol = 1e-6, std::size_t max_iters = 300);

}  // namespace gpac

#endif  // GPAC_BASELINES_HPP
