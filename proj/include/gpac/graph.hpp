#ifndef GPAC_GRAPH_HPP
#define GPAC_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "gpac/types.hpp"

namespace gpac {

struct Neighbor {
  std::int32_t index;
  double dist_sq;
};

/// Exact brute-force k-nearest neighbors under squared Euclidean distance.
/// For each sample the k smallest distances to other samples, ties broken by
/// lower index. Parallel over rows.
std::vector<std::vector<Neighbor>> pairwise_knn(const Dataset& data,
                                                std::size_t k);

/// Kernel bandwidth heuristic: mean squared distance to the k-th neighbor.
/// Throws when every sample coincides (sigma would be zero); supply sigma
/// explicitly in that case.
double estimate_sigma(const std::vector<std::vector<Neighbor>>& knn);

/// Smallest integer theta >= 1 with k^theta >= n/c.
std::size_t default_theta(std::size_t n, std::size_t c, std::size_t k);

/// Symmetric Gaussian-weighted k-NN graph, CSR storage.
/// An edge (i,j) exists when j is among i's k nearest neighbors or vice
/// versa; its weight is exp(-dist_sq/(2*sigma)).
struct KnnGraph {
  std::vector<std::int64_t> offsets;   // n + 1
  std::vector<std::int32_t> indices;   // sorted ascending within each row
  std::vector<double> weights;         // in (0, 1]
  std::vector<double> degrees;         // row weight sums, strictly positive
  double sigma = 0.0;                  // 0 when unknown (e.g. loaded file)
  std::size_t k = 0;

  std::size_t size() const { return degrees.size(); }
  std::span<const std::int32_t> neighbors(std::size_t i) const {
    return {indices.data() + offsets[i],
            static_cast<std::size_t>(offsets[i + 1] - offsets[i])};
  }
  std::span<const double> edge_weights(std::size_t i) const {
    return {weights.data() + offsets[i],
            static_cast<std::size_t>(offsets[i + 1] - offsets[i])};
  }
};

KnnGraph build_knn_graph(const Dataset& data, std::size_t k,
                         std::optional<double> sigma = {});

/// 0/1 expanded-neighborhood graph: per-sample sorted sets of every node
/// reachable within theta hops over the support of W, self excluded.
struct AdjacencyIndicator {
  std::vector<std::int64_t> offsets;  // n + 1
  std::vector<std::int32_t> indices;  // sorted ascending within each row
  std::size_t theta = 0;

  std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const std::int32_t> set(std::size_t i) const {
    return {indices.data() + offsets[i],
            static_cast<std::size_t>(offsets[i + 1] - offsets[i])};
  }
  std::size_t total_entries() const { return indices.size(); }
};

/// Breadth-first expansion; equivalent on support to thresholding
/// (W + I)^theta and dropping the diagonal.
AdjacencyIndicator expand_adjacency(const KnnGraph& graph, std::size_t theta);

/// Degree-weighted average of the neighbors' probability rows.
std::vector<double> neighborhood_average(const KnnGraph& graph,
                                         const FuzzyPartition& partition,
                                         std::size_t i);

/// Edge-list text serialization: one "i j w" line per undirected edge with
/// i < j, sorted, weights printed with 17 significant digits so that a
/// write/read cycle is exact.
void write_edge_list(const KnnGraph& graph, std::ostream& out);
void write_edge_list(const KnnGraph& graph, const std::string& path);
KnnGraph read_edge_list(std::istream& in);
KnnGraph read_edge_list(const std::string& path);

}  // namespace gpac

#endif  // GPAC_GRAPH_HPP
