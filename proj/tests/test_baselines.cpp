#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "gpac/baselines.hpp"
#include "gpac/metrics.hpp"
#include "gpac/rng.hpp"
#include "gpac/synthetic.hpp"
#include "gpac/types.hpp"

using namespace gpac;

namespace {

Dataset pair_blobs() {
  // two tight pairs far apart
  return Dataset({0.0, 0.1, 10.0, 10.1}, 4, 1);
}

}  // namespace

TEST_CASE("kmeanspp_seed degenerate and exhaustive cases") {
  Dataset data({0.0, 1.0, 2.0, 5.0}, 4, 1);

  SUBCASE("c = 1 returns one of the points") {
    std::mt19937_64 g(4);
    Centroids cent = kmeanspp_seed(data, 1, g);
    REQUIRE(cent.c == 1);
    const double v = cent.centers[0];
    CHECK((v == 0.0 || v == 1.0 || v == 2.0 || v == 5.0));
  }

  SUBCASE("c = n uses every distinct point") {
    std::mt19937_64 g(4);
    Centroids cent = kmeanspp_seed(data, 4, g);
    std::multiset<double> seeds(cent.centers.begin(), cent.centers.end());
    CHECK(seeds == std::multiset<double>({0.0, 1.0, 2.0, 5.0}));
  }

  SUBCASE("fixed generator state reproduces the seeds") {
    std::mt19937_64 g1(99), g2(99);
    Centroids a = kmeanspp_seed(data, 3, g1);
    Centroids b = kmeanspp_seed(data, 3, g2);
    CHECK(a.centers == b.centers);
  }
}

TEST_CASE("kmeanspp_seed needs enough distinct points") {
  Dataset dups({1.0, 1.0, 1.0, 2.0}, 4, 1);  // two distinct values
  std::mt19937_64 g(0);
  CHECK_THROWS_AS(kmeanspp_seed(dups, 3, g), InvalidArgument);
  std::mt19937_64 g2(0);
  CHECK_NOTHROW(kmeanspp_seed(dups, 2, g2));
}

TEST_CASE("kmeans groups separated pairs") {
  KmeansResult r = kmeans_fit(pair_blobs(), 2, 7);
  CHECK(r.assignment.labels[0] == r.assignment.labels[1]);
  CHECK(r.assignment.labels[2] == r.assignment.labels[3]);
  CHECK(r.assignment.labels[0] != r.assignment.labels[2]);
  for (auto count : r.centroids.counts) CHECK(count > 0);
}

TEST_CASE("kmeans with max_iters = 0 is the nearest-seed assignment") {
  BlobSpec spec;
  spec.n = 80;
  spec.clusters = 4;
  spec.seed = 6;
  Dataset data = make_blobs(spec);
  KmeansResult r = kmeans_fit(data, 4, 3, 0);
  // recompute the nearest seed by hand from the same rng stream
  std::mt19937_64 g(3);
  Centroids seeds = kmeanspp_seed(data, 4, g);
  for (std::size_t i = 0; i < data.n; ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < 4; ++l) {
      double dist = 0.0;
      for (std::size_t t = 0; t < data.d; ++t) {
        double diff = data.row(i)[t] - seeds.row(l)[t];
        dist += diff * diff;
      }
      if (dist < best_d) {
        best_d = dist;
        best = l;
      }
    }
    CHECK(r.assignment.labels[i] == static_cast<std::int64_t>(best));
  }
  CHECK(r.iterations == 0);
}

TEST_CASE("kmeans terminates on duplicate-heavy data") {
  std::vector<double> feats;
  for (int i = 0; i < 30; ++i) feats.push_back(i < 15 ? 1.0 : 4.0);
  Dataset data(std::move(feats), 30, 1);
  KmeansResult r = kmeans_fit(data, 2, 11);
  CHECK(r.iterations <= 100);
  for (auto count : r.centroids.counts) CHECK(count > 0);
}

TEST_CASE("kmeans inertia never increases across Lloyd iterations") {
  BlobSpec spec;
  spec.n = 200;
  spec.clusters = 5;
  spec.cluster_std = 1.5;
  spec.seed = 10;
  Dataset data = make_blobs(spec);
  for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
    KmeansResult r = kmeans_fit(data, 5, seed);
    for (std::size_t t = 1; t < r.inertia_trace.size(); ++t)
      CHECK(r.inertia_trace[t] <= r.inertia_trace[t - 1] + 1e-9);
  }
}

TEST_CASE("kmeans repairs empty clusters") {
  // ask for more clusters than natural groups; every cluster must stay
  // populated thanks to the farthest-point reseeding
  BlobSpec spec;
  spec.n = 60;
  spec.clusters = 2;
  spec.seed = 13;
  Dataset data = make_blobs(spec);
  KmeansResult r = kmeans_fit(data, 6, 1);
  for (auto count : r.centroids.counts) CHECK(count > 0);
}

TEST_CASE("fcm membership is uniform at equidistant points") {
  // middle point equidistant from both stable centers
  Dataset data({0.0, 0.0, 0.1, 0.0, -0.1, 0.0, 4.0, 0.0, 4.1, 0.0, 3.9, 0.0,
                2.0, 0.0},
               7, 2);
  FcmResult r = fcm_fit(data, 2, 1.8, 2);
  auto row = r.partition.row(6);  // the midpoint
  CHECK(row[0] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(row[1] == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("fcm assigns full membership on a center") {
  // a point exactly on a seed keeps membership 1 in the first pass
  Dataset data({0.0, 0.0, 0.0, 4.0, 4.1, 3.9}, 6, 1);
  FcmResult r = fcm_fit(data, 2, 1.5, 3, 1e-7, 50);
  for (std::size_t i = 0; i < 6; ++i) {
    double row_sum = 0.0;
    for (std::size_t l = 0; l < 2; ++l) row_sum += r.partition.row(i)[l];
    CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  // cluster centers converge near 0 and 4; the on-center points saturate
  double top = 0.0;
  for (std::size_t l = 0; l < 2; ++l)
    top = std::max(top, r.partition.row(0)[l]);
  CHECK(top > 0.95);
}

TEST_CASE("fcm approaches kmeans as m approaches 1") {
  BlobSpec spec;
  spec.n = 150;
  spec.clusters = 3;
  spec.cluster_std = 0.4;
  spec.seed = 18;
  Dataset data = make_blobs(spec);
  FcmResult fr = fcm_fit(data, 3, 1.01, 5);
  KmeansResult km = kmeans_fit(data, 3, 5);
  std::vector<std::int64_t> fcm_labels(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    auto row = fr.partition.row(i);
    fcm_labels[i] =
        static_cast<std::int64_t>(std::max_element(row.begin(), row.end()) -
                                  row.begin());
  }
  CHECK(acc(fcm_labels, km.assignment.labels) >= 0.99);
  // memberships themselves are nearly one-hot
  double weakest_top = 1.0;
  for (std::size_t i = 0; i < data.n; ++i) {
    auto row = fr.partition.row(i);
    weakest_top = std::min(weakest_top, *std::max_element(row.begin(),
                                                          row.end()));
  }
  CHECK(weakest_top > 0.9);
}

TEST_CASE("fcm objective never increases and rows stay stochastic") {
  BlobSpec spec;
  spec.n = 120;
  spec.clusters = 4;
  spec.cluster_std = 1.2;
  spec.seed = 20;
  Dataset data = make_blobs(spec);
  FcmResult r = fcm_fit(data, 4, 1.6, 9);
  REQUIRE(r.objective_trace.size() >= 2);
  for (std::size_t t = 1; t < r.objective_trace.size(); ++t)
    CHECK(r.objective_trace[t] <=
          r.objective_trace[t - 1] * (1.0 + 1e-9) + 1e-12);
  r.partition.validate();
}

TEST_CASE("fcm rejects m at or below 1") {
  Dataset data = pair_blobs();
  CHECK_THROWS_AS(fcm_fit(data, 2, 1.0, 0), InvalidArgument);
}

TEST_CASE("fcm with beta zero matches plain fcm bitwise") {
  BlobSpec spec;
  spec.n = 90;
  spec.clusters = 3;
  spec.seed = 25;
  Dataset data = make_blobs(spec);
  auto graph = build_knn_graph(data, 5);
  FcmResult plain = fcm_fit(data, 3, 1.4, 8);
  FcmResult lcc = fcm_lcc_fit(data, 3, 1.4, 0.0, graph, 8);
  CHECK(plain.partition.probs == lcc.partition.probs);
  CHECK(plain.iterations == lcc.iterations);
}

TEST_CASE("the projection pulls an interior outlier towards its neighbors") {
  // a lone point sitting inside one blob's neighborhood follows that blob
  BlobSpec spec;
  spec.n = 100;
  spec.clusters = 2;
  spec.cluster_std = 0.3;
  spec.center_spacing = 10.0;
  spec.seed = 30;
  Dataset data = make_blobs(spec);
  auto graph = build_knn_graph(data, 6);
  FcmResult plain = fcm_fit(data, 2, 1.3, 4);
  FcmResult lcc = fcm_lcc_fit(data, 2, 1.3, 4.0, graph, 4);
  // agreement of each sample with its neighborhood average must not drop
  double plain_gap = 0.0, lcc_gap = 0.0;
  for (std::size_t i = 0; i < data.n; ++i) {
    auto pa = neighborhood_average(graph, plain.partition, i);
    auto la = neighborhood_average(graph, lcc.partition, i);
    for (std::size_t l = 0; l < 2; ++l) {
      plain_gap += std::abs(plain.partition.row(i)[l] - pa[l]);
      lcc_gap += std::abs(lcc.partition.row(i)[l] - la[l]);
    }
  }
  CHECK(lcc_gap <= plain_gap + 1e-9);
}

TEST_CASE("fcm with the projection is at least as good on noisy blobs") {
  BlobSpec spec;
  spec.n = 300;
  spec.clusters = 3;
  spec.cluster_std = 0.8;
  spec.noise_fraction = 0.1;
  spec.seed = 42;
  Dataset data = make_blobs(spec);
  auto graph = build_knn_graph(data, 10);

  auto argmax_labels = [&](const FuzzyPartition& p) {
    std::vector<std::int64_t> out(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
      auto row = p.row(i);
      out[i] = static_cast<std::int64_t>(
          std::max_element(row.begin(), row.end()) - row.begin());
    }
    return out;
  };
  double plain_total = 0.0, lcc_total = 0.0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    FcmResult plain = fcm_fit(data, 3, 1.1, seed);
    FcmResult lcc = fcm_lcc_fit(data, 3, 1.1, 1.0, graph, seed);
    plain_total += acc(argmax_labels(plain.partition), data.labels);
    lcc_total += acc(argmax_labels(lcc.partition), data.labels);
  }
  CHECK(lcc_total >= plain_total - 1e-9);
}
