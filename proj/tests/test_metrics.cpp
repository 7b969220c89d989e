#include <random>
#include <vector>

#include "doctest.h"
#include "gpac/metrics.hpp"
#include "gpac/rng.hpp"
#include "gpac/types.hpp"
#include "support/oracles.hpp"

using namespace gpac;

namespace {

std::vector<std::int64_t> random_labels(std::size_t n, std::size_t c,
                                        std::mt19937_64& g) {
  std::vector<std::int64_t> out(n);
  for (auto& v : out) v = static_cast<std::int64_t>(rng::uniform_below(g, c));
  return out;
}

}  // namespace

TEST_CASE("contingency counts and marginals stay consistent") {
  std::vector<std::int64_t> pred = {0, 0, 1, 1, 2};
  std::vector<std::int64_t> truth = {5, 5, 7, 5, 7};
  auto t = Contingency::build(pred, truth);
  CHECK(t.total == 5);
  std::int64_t sum = 0;
  for (auto v : t.counts) sum += v;
  CHECK(sum == t.total);
  std::int64_t rows = 0, cols = 0;
  for (auto v : t.row_sums) rows += v;
  for (auto v : t.col_sums) cols += v;
  CHECK(rows == t.total);
  CHECK(cols == t.total);
}

TEST_CASE("nmi on the textbook cases") {
  std::vector<std::int64_t> a = {0, 0, 1, 1};
  CHECK(nmi(a, a) == doctest::Approx(1.0));

  std::vector<std::int64_t> relabeled = {1, 1, 0, 0};
  CHECK(nmi(a, relabeled) == doctest::Approx(1.0));

  std::vector<std::int64_t> constant = {0, 0, 0, 0};
  CHECK(nmi(constant, a) == doctest::Approx(0.0));

  std::vector<std::int64_t> crossed = {0, 1, 0, 1};
  CHECK(nmi(a, crossed) == doctest::Approx(0.0));

  // both single-cluster: 0/0 defined as full agreement
  CHECK(nmi(constant, constant) == doctest::Approx(1.0));
}

TEST_CASE("nmi rejects mismatched lengths") {
  std::vector<std::int64_t> a = {0, 1};
  std::vector<std::int64_t> b = {0, 1, 2};
  CHECK_THROWS_AS(nmi(a, b), InvalidArgument);
}

TEST_CASE("acc on the textbook cases") {
  std::vector<std::int64_t> truth = {0, 0, 1, 1};
  std::vector<std::int64_t> relabeled = {3, 3, 0, 0};
  CHECK(acc(relabeled, truth) == doctest::Approx(1.0));

  std::vector<std::int64_t> pred = {0, 0, 0, 1};
  std::vector<std::int64_t> truth2 = {0, 0, 1, 1};
  CHECK(acc(pred, truth2) == doctest::Approx(0.75));
}

TEST_CASE("acc equals exhaustive matching on random cases") {
  std::mt19937_64 g(101);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng::uniform_below(g, 7);
    const std::size_t cp = 1 + rng::uniform_below(g, 4);
    const std::size_t ct = 1 + rng::uniform_below(g, 4);
    auto pred = random_labels(n, cp, g);
    auto truth = random_labels(n, ct, g);
    CHECK(acc(pred, truth) == oracles::exhaustive_acc(pred, truth));
  }
}

TEST_CASE("ari on the textbook cases") {
  std::vector<std::int64_t> a = {0, 0, 1, 1};
  CHECK(ari(a, a) == doctest::Approx(1.0));

  std::vector<std::int64_t> crossed = {0, 1, 0, 1};
  CHECK(ari(crossed, a) == doctest::Approx(-0.5));
}

TEST_CASE("ari matches pair enumeration on random cases") {
  std::mt19937_64 g(202);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng::uniform_below(g, 9);
    const std::size_t cp = 1 + rng::uniform_below(g, 4);
    const std::size_t ct = 1 + rng::uniform_below(g, 4);
    auto pred = random_labels(n, cp, g);
    auto truth = random_labels(n, ct, g);
    CHECK(ari(pred, truth) ==
          doctest::Approx(oracles::pairwise_ari(pred, truth)).epsilon(1e-12));
  }
}

TEST_CASE("metrics are invariant under relabeling of predictions") {
  std::mt19937_64 g(303);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 4 + rng::uniform_below(g, 40);
    const std::size_t c = 2 + rng::uniform_below(g, 5);
    auto pred = random_labels(n, c, g);
    auto truth = random_labels(n, c, g);
    // apply a random permutation to the predicted ids
    std::vector<std::int64_t> perm(c);
    for (std::size_t l = 0; l < c; ++l) perm[l] = static_cast<std::int64_t>(l);
    rng::shuffle(perm, g);
    auto renamed = pred;
    for (auto& v : renamed) v = perm[static_cast<std::size_t>(v)];

    CHECK(nmi(renamed, truth) == doctest::Approx(nmi(pred, truth)));
    CHECK(acc(renamed, truth) == doctest::Approx(acc(pred, truth)));
    CHECK(ari(renamed, truth) == doctest::Approx(ari(pred, truth)));
  }
}

TEST_CASE("acc is bounded below by 1/max(r,s)") {
  std::mt19937_64 g(404);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 4 + rng::uniform_below(g, 40);
    const std::size_t cp = 1 + rng::uniform_below(g, 6);
    const std::size_t ct = 1 + rng::uniform_below(g, 6);
    auto pred = random_labels(n, cp, g);
    auto truth = random_labels(n, ct, g);
    auto t = Contingency::build(pred, truth);
    const double bound =
        1.0 / static_cast<double>(std::max(t.rows, t.cols));
    CHECK(acc(pred, truth) >= bound - 1e-12);
  }
}

TEST_CASE("nmi and acc are symmetric when cluster counts match") {
  std::mt19937_64 g(505);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 6 + rng::uniform_below(g, 30);
    const std::size_t c = 2 + rng::uniform_below(g, 4);
    auto a = random_labels(n, c, g);
    auto b = random_labels(n, c, g);
    auto ta = Contingency::build(a, b);
    if (ta.rows != ta.cols) continue;
    CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)));
    CHECK(acc(a, b) == doctest::Approx(acc(b, a)));
  }
}

TEST_CASE("rectangular matchings pad with zero-weight columns") {
  // more predicted clusters than classes: extras count as errors
  std::vector<std::int64_t> pred = {0, 1, 2, 3};
  std::vector<std::int64_t> truth = {0, 0, 1, 1};
  CHECK(acc(pred, truth) == doctest::Approx(0.5));
  // more classes than predicted clusters
  CHECK(acc(truth, pred) == doctest::Approx(0.5));
}
