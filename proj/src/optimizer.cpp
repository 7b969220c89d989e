#include "gpac/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

#include "gpac/baselines.hpp"
#include "gpac/rng.hpp"

namespace gpac {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Above this many adjacency entries the per-epoch objective trace switches
// to a row-sampled estimate.
constexpr std::size_t kExactObjectiveEntryLimit = 2'000'000;
constexpr std::size_t kObjectiveSampleRows = 512;

}  // namespace

void guard_scores(std::span<double> s_p) {
  double lo = s_p[0];
  for (double v : s_p) lo = std::min(lo, v);
  // (s - lo) + 1 pins the minimum at exactly 1.0
  for (double& v : s_p) v = (v - lo) + 1.0;
}

std::vector<double> fuzzy_from_scores(std::span<const double> scores,
                                      double m) {
  const double gamma = 1.0 / (m - 1.0);
  std::vector<double> out(scores.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < scores.size(); ++l) {
    out[l] = -gamma * std::log(scores[l]);
    top = std::max(top, out[l]);
  }
  double sum = 0.0;
  for (double& v : out) {
    v = std::exp(v - top);
    sum += v;
  }
  if (!std::isfinite(sum) || sum <= 0.0)
    throw NumericError("fuzzy score normalization produced a non-finite row");
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> project_local_consistency(std::span<const double> p_star,
                                              std::span<const double> p_bar,
                                              double beta) {
  std::vector<double> out(p_star.size());
  const double inv = 1.0 / (1.0 + beta);
  for (std::size_t l = 0; l < p_star.size(); ++l)
    out[l] = (p_star[l] + beta * p_bar[l]) * inv;
  return out;
}

std::size_t hard_from_scores(std::span<const double> s_v) {
  std::size_t best = 0;
  for (std::size_t l = 1; l < s_v.size(); ++l)
    if (s_v[l] < s_v[best]) best = l;
  return best;
}

namespace {

HardPartition draw_initial_labels(const Dataset& data, const GpacConfig& cfg,
                                  std::mt19937_64& rng) {
  HardPartition hard;
  hard.c = static_cast<std::int64_t>(cfg.clusters);
  hard.labels.assign(data.n, 0);
  switch (cfg.init_mode) {
    case InitMode::kZero:
      break;
    case InitMode::kRandom:
      for (auto& l : hard.labels)
        l = static_cast<std::int64_t>(rng::uniform_below(rng, cfg.clusters));
      break;
    case InitMode::kKmeansPlusPlus: {
      Centroids seeds = kmeanspp_seed(data, cfg.clusters, rng);
      for (std::size_t i = 0; i < data.n; ++i) {
        auto x = data.row(i);
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < cfg.clusters; ++l) {
          double d = 0.0;
          auto cx = seeds.row(l);
          for (std::size_t t = 0; t < x.size(); ++t) {
            double diff = x[t] - cx[t];
            d += diff * diff;
          }
          if (d < best_d) {
            best_d = d;
            best = l;
          }
        }
        hard.labels[i] = static_cast<std::int64_t>(best);
      }
      break;
    }
  }
  return hard;
}

}  // namespace

std::pair<FuzzyPartition, HardPartition> init_partitions(
    const Dataset& data, const GpacConfig& config) {
  const GpacConfig cfg = validate_config(config, data);
  FuzzyPartition p(data.n, cfg.clusters, 1.0 / static_cast<double>(cfg.clusters));
  std::mt19937_64 rng(cfg.seed);
  return {std::move(p), draw_initial_labels(data, cfg, rng)};
}

GraphPair build_graphs(const Dataset& data, const GpacConfig& config) {
  GraphPair g;
  g.knn = build_knn_graph(data, config.k, config.sigma_override);
  std::size_t theta = 1;
  if (config.theta_override) {
    theta = *config.theta_override;
  } else if (data.n > config.clusters) {
    theta = default_theta(data.n, config.clusters,
                          std::max<std::size_t>(2, config.k));
  }
  g.adjacency = expand_adjacency(g.knn, theta);
  return g;
}

double objective_value(const FuzzyPartition& partition,
                       std::span<const std::int64_t> hard_labels,
                       const AdjacencyIndicator& adjacency, double alpha,
                       double m) {
  const std::size_t n = partition.n;
  const std::size_t c = partition.c;
  std::vector<double> p_tilde(c, 0.0), q_tilde(c, 0.0), v_tilde(c, 0.0);
  double power_sum = 0.0;  // sum of p^(m+1)
  for (std::size_t i = 0; i < n; ++i) {
    auto row = partition.row(i);
    for (std::size_t l = 0; l < c; ++l) {
      const double pm = std::pow(row[l], m);
      p_tilde[l] += row[l];
      q_tilde[l] += pm;
      power_sum += row[l] * pm;
    }
    v_tilde[static_cast<std::size_t>(hard_labels[i])] += 1.0;
  }
  double hard_term = -static_cast<double>(n);
  double fuzzy_term = -power_sum;
  for (std::size_t l = 0; l < c; ++l) {
    hard_term += v_tilde[l] * v_tilde[l];
    fuzzy_term += p_tilde[l] * q_tilde[l];
  }
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto li = static_cast<std::size_t>(hard_labels[i]);
    for (std::int32_t j : adjacency.set(i))
      cross += std::pow(partition.row(static_cast<std::size_t>(j))[li], m);
  }
  return hard_term + fuzzy_term - alpha * cross;
}

GpacSolver::GpacSolver(const Dataset& data, GpacConfig config)
    : data_(data), cfg_(validate_config(std::move(config), data)), rng_(cfg_.seed) {}

void GpacSolver::attach_graphs(const GraphPair* graphs) {
  if (prepared_) throw Error("attach_graphs must precede prepare()");
  shared_graphs_ = graphs;
}

void GpacSolver::prepare() {
  if (prepared_) return;
  if (!shared_graphs_) {
    auto t0 = Clock::now();
    owned_graphs_ = build_graphs(data_, cfg_);
    graph_ms_ = ms_since(t0);
  }
  const std::size_t n = data_.n;
  const std::size_t c = cfg_.clusters;
  partition_ = FuzzyPartition(n, c, 1.0 / static_cast<double>(c));
  pow_cache_.assign(n * c, std::pow(1.0 / static_cast<double>(c), cfg_.m));
  hard_labels_ = draw_initial_labels(data_, cfg_, rng_).labels;
  p_tilde_.assign(c, 0.0);
  p_tilde_comp_.assign(c, 0.0);
  v_tilde_.assign(c, 0.0);
  in_batch_.assign(n, 0);
  order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<std::int32_t>(i);
  epoch_ = 0;
  beta_ = beta_for_epoch(0);
  prepared_ = true;
}

double GpacSolver::beta_for_epoch(std::size_t epoch) const {
  if (cfg_.beta_ramp_epochs == 0) return cfg_.beta_max;
  const double frac = static_cast<double>(epoch) /
                      static_cast<double>(cfg_.beta_ramp_epochs);
  return cfg_.beta_max * std::min(1.0, frac);
}

void GpacSolver::kahan_add(std::size_t l, double x) {
  const double y = x - p_tilde_comp_[l];
  const double t = p_tilde_[l] + y;
  p_tilde_comp_[l] = (t - p_tilde_[l]) - y;
  p_tilde_[l] = t;
}

void GpacSolver::add_row(std::span<const double> row, double sign) {
  for (std::size_t l = 0; l < row.size(); ++l) kahan_add(l, sign * row[l]);
}

void GpacSolver::set_row(std::size_t i, std::span<const double> values) {
  auto row = partition_.row(i);
  double* pm = pow_cache_.data() + i * cfg_.clusters;
  for (std::size_t l = 0; l < values.size(); ++l) {
    row[l] = values[l];
    pm[l] = std::pow(values[l], cfg_.m);
  }
}

void GpacSolver::recompute_aggregates() {
  std::fill(p_tilde_.begin(), p_tilde_.end(), 0.0);
  std::fill(p_tilde_comp_.begin(), p_tilde_comp_.end(), 0.0);
  std::fill(v_tilde_.begin(), v_tilde_.end(), 0.0);
  for (std::size_t i = 0; i < data_.n; ++i) {
    add_row(partition_.row(i), 1.0);
    v_tilde_[static_cast<std::size_t>(hard_labels_[i])] += 1.0;
  }
}

void GpacSolver::accumulate_scores(std::size_t i,
                                   std::span<const std::int32_t> batch) {
  const std::size_t c = cfg_.clusters;
  const double alpha = cfg_.alpha;
  for (std::size_t l = 0; l < c; ++l) {
    s_p_[l] = p_tilde_[l];
    s_v_[l] = v_tilde_[l];
  }
  auto adj = adjacency().set(i);
  // Enumerate whichever side of the intersection is cheaper: the adjacency
  // set behind an in-batch flag, or the batch behind a binary search.
  const std::size_t probe_cost =
      batch.size() * (std::bit_width(adj.size()) + 1);
  auto tally = [&](std::size_t j) {
    s_p_[static_cast<std::size_t>(hard_labels_[j])] -= alpha;
    const double* pm = pow_cache_.data() + j * c;
    for (std::size_t l = 0; l < c; ++l) s_v_[l] -= alpha * pm[l];
  };
  if (adj.size() <= probe_cost) {
    for (std::int32_t j : adj)
      if (in_batch_[static_cast<std::size_t>(j)])
        tally(static_cast<std::size_t>(j));
  } else {
    for (std::int32_t j : batch)
      if (std::binary_search(adj.begin(), adj.end(), j))
        tally(static_cast<std::size_t>(j));
  }
}

std::size_t GpacSolver::run_epoch() {
  prepare();
  const std::size_t n = data_.n;
  const std::size_t c = cfg_.clusters;
  const std::size_t nb = std::min(cfg_.batch_size, n);
  beta_ = beta_for_epoch(epoch_);

  s_p_.resize(c);
  s_v_.resize(c);
  rng::shuffle(order_, rng_);

  std::size_t changes = 0;
  for (std::size_t lo = 0; lo < n; lo += nb) {
    const std::size_t hi = std::min(n, lo + nb);
    std::span<const std::int32_t> batch(order_.data() + lo, hi - lo);
    for (std::int32_t j : batch) in_batch_[static_cast<std::size_t>(j)] = 1;
    recompute_aggregates();

    for (std::int32_t ji : batch) {
      const auto i = static_cast<std::size_t>(ji);
      add_row(partition_.row(i), -1.0);
      v_tilde_[static_cast<std::size_t>(hard_labels_[i])] -= 1.0;

      accumulate_scores(i, batch);
      if (score_observer) score_observer(i, ScorePair{s_p_, s_v_});
      guard_scores(s_p_);
      auto p_star = fuzzy_from_scores(s_p_, cfg_.m);
      p_bar_ = neighborhood_average(knn(), partition_, i);
      p_new_ = project_local_consistency(p_star, p_bar_, beta_);

      std::int64_t next;
      if (cfg_.hard_update == HardUpdate::kScore) {
        next = static_cast<std::int64_t>(hard_from_scores(s_v_));
      } else {
        std::size_t best = 0;
        for (std::size_t l = 1; l < c; ++l)
          if (p_new_[l] > p_new_[best]) best = l;
        next = static_cast<std::int64_t>(best);
      }
      if (next != hard_labels_[i]) ++changes;

      set_row(i, p_new_);
      hard_labels_[i] = next;
      add_row(p_new_, 1.0);
      v_tilde_[static_cast<std::size_t>(next)] += 1.0;
    }
    for (std::int32_t j : batch) in_batch_[static_cast<std::size_t>(j)] = 0;
  }
  ++epoch_;
  return changes;
}

std::vector<std::int64_t> GpacSolver::predictions() const {
  const std::size_t c = cfg_.clusters;
  std::vector<std::int64_t> out(data_.n);
  for (std::size_t i = 0; i < data_.n; ++i) {
    auto row = partition_.row(i);
    std::size_t best = 0;
    for (std::size_t l = 1; l < c; ++l)
      if (row[l] > row[best]) best = l;
    out[i] = static_cast<std::int64_t>(best);
  }
  return out;
}

AggregateState GpacSolver::aggregates() const {
  AggregateState s;
  s.p_tilde = p_tilde_;
  s.v_tilde = v_tilde_;
  s.epoch = epoch_;
  s.beta_current = beta_;
  return s;
}

double GpacSolver::objective() const {
  const std::size_t n = data_.n;
  const std::size_t c = cfg_.clusters;
  const auto& adj = adjacency();

  std::vector<double> p_tilde(c, 0.0), q_tilde(c, 0.0), v_tilde(c, 0.0);
  double power_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = partition_.row(i);
    const double* pm = pow_cache_.data() + i * c;
    for (std::size_t l = 0; l < c; ++l) {
      p_tilde[l] += row[l];
      q_tilde[l] += pm[l];
      power_sum += row[l] * pm[l];
    }
    v_tilde[static_cast<std::size_t>(hard_labels_[i])] += 1.0;
  }
  double value = -static_cast<double>(n) - power_sum;
  for (std::size_t l = 0; l < c; ++l)
    value += v_tilde[l] * v_tilde[l] + p_tilde[l] * q_tilde[l];

  auto cross_row = [&](std::size_t i) {
    const auto li = static_cast<std::size_t>(hard_labels_[i]);
    double s = 0.0;
    for (std::int32_t j : adj.set(i))
      s += pow_cache_[static_cast<std::size_t>(j) * c + li];
    return s;
  };
  double cross = 0.0;
  if (adj.total_entries() <= kExactObjectiveEntryLimit) {
    for (std::size_t i = 0; i < n; ++i) cross += cross_row(i);
  } else {
    // systematic row sample, scaled back to the full sum
    const std::size_t rows = std::min(kObjectiveSampleRows, n);
    const std::size_t step = n / rows;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < n && counted < rows; i += step, ++counted)
      cross += cross_row(i);
    cross *= static_cast<double>(n) / static_cast<double>(counted);
  }
  return value - cfg_.alpha * cross;
}

FitResult GpacSolver::fit() {
  const auto t_start = Clock::now();
  prepare();
  const std::size_t n = data_.n;

  FitResult result;
  double optimize_ms = 0.0;
  while (epoch_ < cfg_.max_epochs) {
    const std::size_t ep = epoch_;
    const auto t0 = Clock::now();
    const std::size_t changed = run_epoch();
    const double epoch_ms = ms_since(t0);
    optimize_ms += epoch_ms;
    result.trace.push_back({ep, objective(), changed, beta_, epoch_ms});
    if (static_cast<double>(changed) / static_cast<double>(n) <
        cfg_.convergence_tol)
      break;
  }

  result.partition = partition_;
  result.assignment.c = static_cast<std::int64_t>(cfg_.clusters);
  result.assignment.labels = predictions();
  result.timings = {graph_ms_, optimize_ms, ms_since(t_start)};
  return result;
}

FitResult fit(const Dataset& data, const GpacConfig& config) {
  GpacSolver solver(data, config);
  return solver.fit();
}

}  // namespace gpac
