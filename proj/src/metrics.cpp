#include "gpac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "gpac/types.hpp"

namespace gpac {

namespace {

std::vector<std::int32_t> compact_ids(std::span<const std::int64_t> labels,
                                      std::size_t& count) {
  std::unordered_map<std::int64_t, std::int32_t> remap;
  remap.reserve(labels.size());
  std::vector<std::int32_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] =
        remap.emplace(labels[i], static_cast<std::int32_t>(remap.size()));
    out[i] = it->second;
  }
  count = remap.size();
  return out;
}

std::int64_t pairs2(std::int64_t x) { return x * (x - 1) / 2; }

}  // namespace

Contingency Contingency::build(std::span<const std::int64_t> pred,
                               std::span<const std::int64_t> truth) {
  if (pred.size() != truth.size())
    throw InvalidArgument("label vectors differ in length");
  if (pred.empty()) throw InvalidArgument("label vectors are empty");
  Contingency t;
  auto p = compact_ids(pred, t.rows);
  auto q = compact_ids(truth, t.cols);
  t.counts.assign(t.rows * t.cols, 0);
  t.row_sums.assign(t.rows, 0);
  t.col_sums.assign(t.cols, 0);
  t.total = static_cast<std::int64_t>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++t.counts[static_cast<std::size_t>(p[i]) * t.cols +
               static_cast<std::size_t>(q[i])];
    ++t.row_sums[static_cast<std::size_t>(p[i])];
    ++t.col_sums[static_cast<std::size_t>(q[i])];
  }
  return t;
}

double nmi(std::span<const std::int64_t> pred,
           std::span<const std::int64_t> truth, NmiNorm norm) {
  const Contingency t = Contingency::build(pred, truth);
  const double n = static_cast<double>(t.total);

  double info = 0.0;
  for (std::size_t u = 0; u < t.rows; ++u) {
    for (std::size_t v = 0; v < t.cols; ++v) {
      const std::int64_t c = t.at(u, v);
      if (c == 0) continue;
      const double joint = static_cast<double>(c) / n;
      info += joint * std::log(static_cast<double>(c) * n /
                               (static_cast<double>(t.row_sums[u]) *
                                static_cast<double>(t.col_sums[v])));
    }
  }
  auto entropy = [n](const std::vector<std::int64_t>& sums) {
    double h = 0.0;
    for (std::int64_t s : sums) {
      if (s == 0) continue;
      const double p = static_cast<double>(s) / n;
      h -= p * std::log(p);
    }
    return h;
  };
  const double hp = entropy(t.row_sums);
  const double ht = entropy(t.col_sums);
  if (hp == 0.0 && ht == 0.0) return 1.0;  // both single-cluster
  const double denom =
      norm == NmiNorm::kArithmetic ? 0.5 * (hp + ht) : std::sqrt(hp * ht);
  if (denom == 0.0) return 0.0;
  return std::clamp(info / denom, 0.0, 1.0);
}

namespace detail {

std::int64_t max_assignment(const Contingency& table) {
  // Hungarian algorithm with potentials on the padded square matrix,
  // minimizing negated counts.
  const std::size_t k = std::max(table.rows, table.cols);
  auto cost = [&](std::size_t u, std::size_t v) -> double {
    if (u < table.rows && v < table.cols)
      return -static_cast<double>(table.at(u, v));
    return 0.0;
  };
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
  for (std::size_t row = 1; row <= k; ++row) {
    match[0] = row;
    std::size_t j0 = 0;
    std::vector<double> minv(k + 1, kInf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::int64_t matched = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t row = match[j];
    if (row >= 1 && row - 1 < table.rows && j - 1 < table.cols)
      matched += table.at(row - 1, j - 1);
  }
  return matched;
}

}  // namespace detail

double acc(std::span<const std::int64_t> pred,
           std::span<const std::int64_t> truth) {
  const Contingency t = Contingency::build(pred, truth);
  return static_cast<double>(detail::max_assignment(t)) /
         static_cast<double>(t.total);
}

double ari(std::span<const std::int64_t> pred,
           std::span<const std::int64_t> truth) {
  if (pred.size() < 2)
    throw InvalidArgument("adjusted Rand index needs at least 2 samples");
  const Contingency t = Contingency::build(pred, truth);

  std::int64_t index = 0;
  for (std::int64_t c : t.counts) index += pairs2(c);
  std::int64_t a = 0, b = 0;
  for (std::int64_t s : t.row_sums) a += pairs2(s);
  for (std::int64_t s : t.col_sums) b += pairs2(s);
  const double total_pairs = static_cast<double>(pairs2(t.total));
  const double expected =
      static_cast<double>(a) * (static_cast<double>(b) / total_pairs);
  const double max_index = 0.5 * (static_cast<double>(a) + static_cast<double>(b));
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (static_cast<double>(index) - expected) / denom;
}

}  // namespace gpac
