#include "gpac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpac/optimizer.hpp"
#include "gpac/parallel.hpp"
#include "gpac/rng.hpp"

namespace gpac {

namespace {

double dist_sq(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    double diff = a[t] - b[t];
    s += diff * diff;
  }
  return s;
}

/// Nearest center, ties broken by lower index.
std::pair<std::size_t, double> nearest_center(std::span<const double> x,
                                              const Centroids& cent) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < cent.c; ++l) {
    double d = dist_sq(x, cent.row(l));
    if (d < best_d) {
      best_d = d;
      best = l;
    }
  }
  return {best, best_d};
}

/// Membership row for one sample given centers; applies the coincident
/// sample rule (all mass on the first zero-distance center).
void fcm_membership(std::span<const double> x, const Centroids& cent,
                    double m, std::vector<double>& dist_scratch,
                    std::vector<double>& out) {
  const std::size_t c = cent.c;
  dist_scratch.resize(c);
  std::size_t zero_at = c;
  for (std::size_t l = 0; l < c; ++l) {
    dist_scratch[l] = dist_sq(x, cent.row(l));
    if (dist_scratch[l] == 0.0 && zero_at == c) zero_at = l;
  }
  if (zero_at < c) {  // sample sits on a center
    out.assign(c, 0.0);
    out[zero_at] = 1.0;
    return;
  }
  out = fuzzy_from_scores(dist_scratch, m);
}

}  // namespace

Centroids kmeanspp_seed(const Dataset& data, std::size_t c,
                        std::mt19937_64& rng) {
  const std::size_t n = data.n;
  if (c < 1) throw InvalidArgument("cluster count must be >= 1");
  if (c > n) throw InvalidArgument("cluster count exceeds sample count");

  std::vector<std::size_t> chosen;
  chosen.reserve(c);
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());

  chosen.push_back(static_cast<std::size_t>(rng::uniform_below(rng, n)));
  auto relax = [&](std::size_t center) {
    auto cx = data.row(center);
    for (std::size_t i = 0; i < n; ++i)
      dist2[i] = std::min(dist2[i], dist_sq(data.row(i), cx));
  };
  relax(chosen.back());

  while (chosen.size() < c) {
    double total = 0.0;
    for (double v : dist2) total += v;
    if (!(total > 0.0))
      throw InvalidArgument(
          "dataset has fewer distinct points than requested clusters");
    const double r = rng::uniform01(rng) * total;
    double cum = 0.0;
    std::size_t pick = n;  // last positive-weight index as fallback
    for (std::size_t i = 0; i < n; ++i) {
      if (dist2[i] <= 0.0) continue;
      cum += dist2[i];
      pick = i;
      if (cum >= r) break;
    }
    chosen.push_back(pick);
    relax(pick);
  }

  Centroids cent;
  cent.c = c;
  cent.d = data.d;
  cent.centers.resize(c * data.d);
  cent.counts.assign(c, 0);
  for (std::size_t l = 0; l < c; ++l) {
    auto src = data.row(chosen[l]);
    std::copy(src.begin(), src.end(), cent.centers.begin() + l * data.d);
  }
  return cent;
}

KmeansResult kmeans_fit(const Dataset& data, std::size_t c,
                        std::uint64_t seed, std::size_t max_iters) {
  const std::size_t n = data.n;
  const std::size_t d = data.d;
  std::mt19937_64 rng(seed);
  Centroids cent = kmeanspp_seed(data, c, rng);

  KmeansResult res;
  res.assignment.c = static_cast<std::int64_t>(c);
  res.assignment.labels.assign(n, 0);
  std::vector<double> point_d2(n, 0.0);

  auto assign_all = [&]() {
    parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        auto [l, dist] = nearest_center(data.row(i), cent);
        res.assignment.labels[i] = static_cast<std::int64_t>(l);
        point_d2[i] = dist;
      }
    });
    double inertia = 0.0;
    for (double v : point_d2) inertia += v;
    return inertia;
  };

  res.inertia = assign_all();
  res.inertia_trace.push_back(res.inertia);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    // center update
    std::vector<double> sums(c * d, 0.0);
    std::vector<std::int64_t> counts(c, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto l = static_cast<std::size_t>(res.assignment.labels[i]);
      auto x = data.row(i);
      for (std::size_t t = 0; t < d; ++t) sums[l * d + t] += x[t];
      ++counts[l];
    }
    for (std::size_t l = 0; l < c; ++l) {
      if (counts[l] == 0) continue;
      for (std::size_t t = 0; t < d; ++t)
        cent.centers[l * d + t] = sums[l * d + t] / counts[l];
    }
    // empty clusters grab the farthest point from its own center
    for (std::size_t l = 0; l < c; ++l) {
      if (counts[l] > 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto owner = static_cast<std::size_t>(res.assignment.labels[i]);
        if (counts[owner] <= 1) continue;
        double dd = dist_sq(data.row(i), cent.row(owner));
        if (dd > far_d) {
          far_d = dd;
          far = i;
        }
      }
      auto x = data.row(far);
      std::copy(x.begin(), x.end(), cent.centers.begin() + l * d);
      --counts[static_cast<std::size_t>(res.assignment.labels[far])];
      res.assignment.labels[far] = static_cast<std::int64_t>(l);
      ++counts[l];
    }

    auto old_labels = res.assignment.labels;
    res.inertia = assign_all();
    res.inertia_trace.push_back(res.inertia);
    res.iterations = iter + 1;
    if (old_labels == res.assignment.labels) break;
  }

  cent.counts.assign(c, 0);
  for (std::int64_t l : res.assignment.labels)
    ++cent.counts[static_cast<std::size_t>(l)];
  res.centroids = std::move(cent);
  return res;
}

namespace {

FcmResult fcm_impl(const Dataset& data, std::size_t c, double m, double beta,
                   const KnnGraph* graph, std::uint64_t seed, double tol,
                   std::size_t max_iters) {
  if (m <= 1.0) throw InvalidArgument("fuzzy exponent m must exceed 1");
  if (beta < 0.0) throw InvalidArgument("beta must be nonnegative");
  const std::size_t n = data.n;
  const std::size_t d = data.d;
  std::mt19937_64 rng(seed);
  Centroids cent = kmeanspp_seed(data, c, rng);

  FcmResult res;
  res.partition = FuzzyPartition(n, c);
  std::vector<double> dist_scratch, u, p_bar;

  // initial membership pass from the seed centers, no projection yet: the
  // neighbor rows are not populated until every sample has one
  for (std::size_t i = 0; i < n; ++i) {
    fcm_membership(data.row(i), cent, m, dist_scratch, u);
    std::copy(u.begin(), u.end(), res.partition.row(i).begin());
  }

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    // centers: p^m-weighted means
    std::vector<double> wsum(c, 0.0);
    std::vector<double> xsum(c * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = res.partition.row(i);
      auto x = data.row(i);
      for (std::size_t l = 0; l < c; ++l) {
        const double w = std::pow(row[l], m);
        wsum[l] += w;
        for (std::size_t t = 0; t < d; ++t) xsum[l * d + t] += w * x[t];
      }
    }
    for (std::size_t l = 0; l < c; ++l) {
      if (!(wsum[l] > 0.0)) continue;  // keep the previous center
      for (std::size_t t = 0; t < d; ++t)
        cent.centers[l * d + t] = xsum[l * d + t] / wsum[l];
    }

    // memberships, sequentially so the projection reads the latest rows
    double max_delta = 0.0;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      fcm_membership(data.row(i), cent, m, dist_scratch, u);
      for (std::size_t l = 0; l < c; ++l)
        objective += std::pow(u[l], m) * dist_scratch[l];
      if (beta > 0.0) {
        p_bar = neighborhood_average(*graph, res.partition, i);
        u = project_local_consistency(u, p_bar, beta);
      }
      auto row = res.partition.row(i);
      for (std::size_t l = 0; l < c; ++l) {
        max_delta = std::max(max_delta, std::abs(u[l] - row[l]));
        row[l] = u[l];
      }
    }
    res.objective_trace.push_back(objective);
    res.iterations = iter + 1;
    if (max_delta < tol) break;
  }

  cent.counts.assign(c, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = res.partition.row(i);
    std::size_t best = 0;
    for (std::size_t l = 1; l < c; ++l)
      if (row[l] > row[best]) best = l;
    ++cent.counts[best];
  }
  res.centroids = std::move(cent);
  return res;
}

}  // namespace

FcmResult fcm_fit(const Dataset& data, std::size_t c, double m,
                  std::uint64_t seed, double tol, std::size_t max_iters) {
  return fcm_impl(data, c, m, 0.0, nullptr, seed, tol, max_iters);
}

FcmResult fcm_lcc_fit(const Dataset& data, std::size_t c, double m,
                      double beta, const KnnGraph& graph, std::uint64_t seed,
                      double tol, std::size_t max_iters) {
  return fcm_impl(data, c, m, beta, &graph, seed, tol, max_iters);
}

}  // namespace gpac
