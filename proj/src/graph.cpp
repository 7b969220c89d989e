#include "gpac/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "gpac/parallel.hpp"

namespace gpac {

std::vector<std::vector<Neighbor>> pairwise_knn(const Dataset& data,
                                                std::size_t k) {
  const std::size_t n = data.n;
  const std::size_t d = data.d;
  if (k < 1 || k >= n)
    throw InvalidArgument("k must satisfy 1 <= k < n");

  std::vector<std::vector<Neighbor>> result(n);
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    std::vector<Neighbor> cand;
    cand.reserve(n - 1);
    for (std::size_t i = lo; i < hi; ++i) {
      cand.clear();
      const double* xi = data.features.data() + i * d;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double* xj = data.features.data() + j * d;
        double dist = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
          double diff = xi[t] - xj[t];
          dist += diff * diff;
        }
        if (!std::isfinite(dist))
          throw NumericError("non-finite pairwise distance");
        cand.push_back({static_cast<std::int32_t>(j), dist});
      }
      auto closer = [](const Neighbor& a, const Neighbor& b) {
        return a.dist_sq != b.dist_sq ? a.dist_sq < b.dist_sq
                                      : a.index < b.index;
      };
      std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end(),
                       closer);
      std::sort(cand.begin(), cand.begin() + k, closer);
      result[i].assign(cand.begin(), cand.begin() + k);
    }
  });
  return result;
}

double estimate_sigma(const std::vector<std::vector<Neighbor>>& knn) {
  if (knn.empty()) throw InvalidArgument("empty neighbor lists");
  double sum = 0.0;
  for (const auto& row : knn) {
    if (row.empty()) throw InvalidArgument("empty neighbor list row");
    sum += row.back().dist_sq;  // rows are sorted; back() is the k-th
  }
  double sigma = sum / static_cast<double>(knn.size());
  if (!(sigma > 0.0))
    throw InvalidArgument(
        "all samples coincide; kernel bandwidth cannot be estimated, supply "
        "sigma explicitly");
  return sigma;
}

std::size_t default_theta(std::size_t n, std::size_t c, std::size_t k) {
  if (c < 1 || n <= c || k < 2)
    throw InvalidArgument("default_theta needs n > c >= 1 and k >= 2");
  const double target = static_cast<double>(n) / static_cast<double>(c);
  double reach = static_cast<double>(k);
  std::size_t theta = 1;
  while (reach < target) {
    reach *= static_cast<double>(k);
    ++theta;
  }
  return theta;
}

KnnGraph build_knn_graph(const Dataset& data, std::size_t k,
                         std::optional<double> sigma) {
  auto knn = pairwise_knn(data, k);
  const double sig = sigma ? *sigma : estimate_sigma(knn);
  if (!(sig > 0.0)) throw InvalidArgument("sigma must be positive");

  const std::size_t n = data.n;
  // Union symmetrization: every directed k-NN edge is mirrored. The distance
  // between a fixed pair is computed identically from both sides, so
  // duplicates collapse exactly.
  std::vector<std::vector<Neighbor>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].reserve(2 * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Neighbor& nb : knn[i]) {
      rows[i].push_back(nb);
      rows[static_cast<std::size_t>(nb.index)].push_back(
          {static_cast<std::int32_t>(i), nb.dist_sq});
    }
  }

  KnnGraph g;
  g.sigma = sig;
  g.k = k;
  g.offsets.assign(n + 1, 0);
  g.degrees.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = rows[i];
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.index < b.index;
    });
    row.erase(std::unique(row.begin(), row.end(),
                          [](const Neighbor& a, const Neighbor& b) {
                            return a.index == b.index;
                          }),
              row.end());
    g.offsets[i + 1] = g.offsets[i] + static_cast<std::int64_t>(row.size());
  }
  g.indices.resize(static_cast<std::size_t>(g.offsets[n]));
  g.weights.resize(static_cast<std::size_t>(g.offsets[n]));
  const double inv_two_sigma = 1.0 / (2.0 * sig);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t at = static_cast<std::size_t>(g.offsets[i]);
    double degree = 0.0;
    for (const Neighbor& nb : rows[i]) {
      g.indices[at] = nb.index;
      double w = std::exp(-nb.dist_sq * inv_two_sigma);
      g.weights[at] = w;
      degree += w;
      ++at;
    }
    g.degrees[i] = degree;
  }
  return g;
}

AdjacencyIndicator expand_adjacency(const KnnGraph& graph, std::size_t theta) {
  if (theta < 1) throw InvalidArgument("theta must be >= 1");
  const std::size_t n = graph.size();

  std::vector<std::vector<std::int32_t>> sets(n);
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<std::int32_t> frontier, next;
    std::uint32_t tick = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      ++tick;
      auto& out = sets[i];
      out.clear();
      stamp[i] = tick;
      frontier.assign(1, static_cast<std::int32_t>(i));
      for (std::size_t hop = 0; hop < theta && !frontier.empty(); ++hop) {
        next.clear();
        for (std::int32_t u : frontier) {
          for (std::int32_t v : graph.neighbors(static_cast<std::size_t>(u))) {
            if (stamp[static_cast<std::size_t>(v)] != tick) {
              stamp[static_cast<std::size_t>(v)] = tick;
              next.push_back(v);
              out.push_back(v);
            }
          }
        }
        frontier.swap(next);
      }
      std::sort(out.begin(), out.end());
    }
  });

  AdjacencyIndicator a;
  a.theta = theta;
  a.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    a.offsets[i + 1] = a.offsets[i] + static_cast<std::int64_t>(sets[i].size());
  a.indices.resize(static_cast<std::size_t>(a.offsets[n]));
  for (std::size_t i = 0; i < n; ++i)
    std::copy(sets[i].begin(), sets[i].end(),
              a.indices.begin() + a.offsets[i]);
  return a;
}

std::vector<double> neighborhood_average(const KnnGraph& graph,
                                         const FuzzyPartition& partition,
                                         std::size_t i) {
  const std::size_t c = partition.c;
  std::vector<double> avg(c, 0.0);
  auto idx = graph.neighbors(i);
  auto wts = graph.edge_weights(i);
  for (std::size_t t = 0; t < idx.size(); ++t) {
    const double w = wts[t];
    auto row = partition.row(static_cast<std::size_t>(idx[t]));
    for (std::size_t l = 0; l < c; ++l) avg[l] += w * row[l];
  }
  const double degree = graph.degrees[i];
  if (!(degree > 0.0)) throw NumericError("zero degree in neighborhood average");
  for (std::size_t l = 0; l < c; ++l) avg[l] /= degree;
  return avg;
}

void write_edge_list(const KnnGraph& graph, std::ostream& out) {
  char buf[96];
  for (std::size_t i = 0; i < graph.size(); ++i) {
    auto idx = graph.neighbors(i);
    auto wts = graph.edge_weights(i);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (static_cast<std::size_t>(idx[t]) <= i) continue;  // emit i < j once
      int len = std::snprintf(buf, sizeof(buf), "%zu %d %.17g\n", i, idx[t],
                              wts[t]);
      out.write(buf, len);
    }
  }
}

void write_edge_list(const KnnGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_edge_list(graph, out);
}

KnnGraph read_edge_list(std::istream& in) {
  struct Edge {
    std::int64_t i, j;
    double w;
  };
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  std::int64_t max_index = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Edge e{};
    if (!(ls >> e.i >> e.j >> e.w) || e.i < 0 || e.j < 0 || e.i == e.j ||
        !(e.w > 0.0) || e.w > 1.0)
      throw IoError("malformed edge list line " + std::to_string(lineno));
    edges.push_back(e);
    max_index = std::max(max_index, std::max(e.i, e.j));
  }
  if (edges.empty()) throw IoError("edge list is empty");
  const std::size_t n = static_cast<std::size_t>(max_index) + 1;

  std::vector<std::vector<Neighbor>> rows(n);
  for (const Edge& e : edges) {
    rows[static_cast<std::size_t>(e.i)].push_back(
        {static_cast<std::int32_t>(e.j), e.w});
    rows[static_cast<std::size_t>(e.j)].push_back(
        {static_cast<std::int32_t>(e.i), e.w});
  }
  KnnGraph g;  // sigma and k are not present in the format; left as 0
  g.offsets.assign(n + 1, 0);
  g.degrees.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = rows[i];
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.index < b.index;
    });
    g.offsets[i + 1] = g.offsets[i] + static_cast<std::int64_t>(row.size());
  }
  g.indices.resize(static_cast<std::size_t>(g.offsets[n]));
  g.weights.resize(static_cast<std::size_t>(g.offsets[n]));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t at = static_cast<std::size_t>(g.offsets[i]);
    double degree = 0.0;
    for (const Neighbor& nb : rows[i]) {
      g.indices[at] = nb.index;
      g.weights[at] = nb.dist_sq;  // holds the weight here
      degree += nb.dist_sq;
      ++at;
    }
    g.degrees[i] = degree;
  }
  return g;
}

KnnGraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_edge_list(in);
}

}  // namespace gpac
