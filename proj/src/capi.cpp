#include "gpac.h"

#include <chrono>
#include <cstring>
#include <string>

#include "gpac/baselines.hpp"
#include "gpac/io.hpp"
#include "gpac/metrics.hpp"
#include "gpac/optimizer.hpp"
#include "gpac/synthetic.hpp"
#include "gpac/types.hpp"

struct gpac_dataset {
  gpac::Dataset data;
};

struct gpac_result {
  std::vector<std::int64_t> labels;
  std::vector<double> probs;  // empty for hard-only methods
  std::uint64_t clusters = 0;
  std::vector<gpac::EpochRecord> trace;
  gpac::FitTimings timings;
};

namespace {

thread_local std::string t_last_error;

void set_error(const char* message) { t_last_error = message; }

gpac_status handle_exception() {
  try {
    throw;
  } catch (const gpac::IoError& e) {
    t_last_error = e.what();
    return GPAC_ERROR_IO;
  } catch (const gpac::NumericError& e) {
    t_last_error = e.what();
    return GPAC_ERROR_NUMERIC;
  } catch (const gpac::InvalidArgument& e) {
    t_last_error = e.what();
    return GPAC_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GPAC_ERROR_UNKNOWN;
  } catch (...) {
    t_last_error = "unknown failure";
    return GPAC_ERROR_UNKNOWN;
  }
}

gpac::GpacConfig to_config(const gpac_params& p) {
  gpac::GpacConfig cfg;
  cfg.clusters = p.clusters;
  cfg.m = p.m;
  cfg.alpha = p.alpha;
  cfg.beta_max = p.beta_max;
  cfg.beta_ramp_epochs = p.beta_ramp_epochs;
  cfg.k = p.k;
  if (p.theta > 0) cfg.theta_override = static_cast<std::size_t>(p.theta);
  if (p.sigma > 0.0) cfg.sigma_override = p.sigma;
  cfg.batch_size = p.batch_size;
  cfg.max_epochs = p.max_epochs;
  cfg.convergence_tol = p.convergence_tol;
  cfg.seed = p.seed;
  switch (p.init) {
    case GPAC_INIT_RANDOM:
      cfg.init_mode = gpac::InitMode::kRandom;
      break;
    case GPAC_INIT_ZERO:
      cfg.init_mode = gpac::InitMode::kZero;
      break;
    default:
      cfg.init_mode = gpac::InitMode::kKmeansPlusPlus;
      break;
  }
  cfg.hard_update = p.hard_updates == 0 ? gpac::HardUpdate::kArgmaxP
                                        : gpac::HardUpdate::kScore;
  cfg.allow_extreme_m = p.allow_extreme_m != 0;
  return cfg;
}

gpac_result* from_fit(gpac::FitResult&& fit) {
  auto* r = new gpac_result;
  r->labels = std::move(fit.assignment.labels);
  r->probs = std::move(fit.partition.probs);
  r->clusters = static_cast<std::uint64_t>(fit.partition.c);
  r->trace = std::move(fit.trace);
  r->timings = fit.timings;
  return r;
}

#define GPAC_REQUIRE(cond, message)          \
  do {                                       \
    if (!(cond)) {                           \
      set_error(message);                    \
      return GPAC_ERROR_NULL_POINTER;        \
    }                                        \
  } while (0)

}  // namespace

extern "C" {

const char* gpac_version(void) { return "0.1.0"; }

const char* gpac_last_error(void) { return t_last_error.c_str(); }

gpac_status gpac_dataset_create(const double* features, uint64_t n, uint64_t d,
                                const int64_t* labels, gpac_dataset** out) {
  GPAC_REQUIRE(features != nullptr, "features is null");
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  try {
    std::vector<double> feats(features, features + n * d);
    std::vector<std::int64_t> truth;
    if (labels) truth.assign(labels, labels + n);
    *out = new gpac_dataset{
        gpac::Dataset(std::move(feats), n, d, std::move(truth))};
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

gpac_status gpac_dataset_load_csv(const char* path, int64_t label_column,
                                  gpac_dataset** out) {
  GPAC_REQUIRE(path != nullptr, "path is null");
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  try {
    std::optional<std::size_t> col;
    if (label_column >= 0) col = static_cast<std::size_t>(label_column);
    *out = new gpac_dataset{gpac::load_csv(path, col)};
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

gpac_status gpac_dataset_load_binary(const char* features_path,
                                     const char* labels_path,
                                     gpac_dataset** out) {
  GPAC_REQUIRE(features_path != nullptr, "features path is null");
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  try {
    *out = new gpac_dataset{gpac::load_binary(
        features_path, labels_path ? labels_path : std::string())};
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

gpac_status gpac_dataset_save_binary(const gpac_dataset* ds,
                                     const char* features_path,
                                     const char* labels_path) {
  GPAC_REQUIRE(ds != nullptr, "dataset is null");
  GPAC_REQUIRE(features_path != nullptr, "features path is null");
  try {
    gpac::save_binary(ds->data, features_path,
                      labels_path ? labels_path : std::string());
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

gpac_status gpac_dataset_make_blobs(uint64_t n, uint64_t clusters,
                                    uint64_t dim, double cluster_std,
                                    double center_spacing,
                                    double noise_fraction, uint64_t seed,
                                    gpac_dataset** out) {
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  try {
    gpac::BlobSpec spec;
    spec.n = n;
    spec.clusters = clusters;
    spec.dim = dim;
    spec.cluster_std = cluster_std;
    spec.center_spacing = center_spacing;
    spec.noise_fraction = noise_fraction;
    spec.seed = seed;
    *out = new gpac_dataset{gpac::make_blobs(spec)};
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

uint64_t gpac_dataset_n(const gpac_dataset* ds) { return ds ? ds->data.n : 0; }

uint64_t gpac_dataset_dim(const gpac_dataset* ds) {
  return ds ? ds->data.d : 0;
}

int gpac_dataset_has_labels(const gpac_dataset* ds) {
  return ds && ds->data.has_labels() ? 1 : 0;
}

const double* gpac_dataset_features(const gpac_dataset* ds) {
  return ds ? ds->data.features.data() : nullptr;
}

const int64_t* gpac_dataset_labels(const gpac_dataset* ds) {
  return ds && ds->data.has_labels() ? ds->data.labels.data() : nullptr;
}

void gpac_dataset_destroy(gpac_dataset* ds) { delete ds; }

void gpac_params_init(gpac_params* params) {
  if (!params) return;
  std::memset(params, 0, sizeof(*params));
  params->clusters = 2;
  params->m = 1.05;
  params->alpha = 1.0;
  params->beta_max = 1.0;
  params->beta_ramp_epochs = 10;
  params->k = 10;
  params->theta = 0;
  params->sigma = 0.0;
  params->batch_size = 1024;
  params->max_epochs = 100;
  params->convergence_tol = 1e-3;
  params->seed = 0;
  params->init = GPAC_INIT_KMEANSPP;
  params->hard_updates = 1;
  params->allow_extreme_m = 0;
}

gpac_status gpac_fit(const gpac_dataset* ds, const gpac_params* params,
                     gpac_result** out) {
  GPAC_REQUIRE(ds != nullptr, "dataset is null");
  GPAC_REQUIRE(params != nullptr, "params is null");
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  try {
    *out = from_fit(gpac::fit(ds->data, to_config(*params)));
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

gpac_status gpac_fit_repeats(const gpac_dataset* ds, const gpac_params* params,
                             uint32_t repeats, gpac_result** out) {
  GPAC_REQUIRE(ds != nullptr, "dataset is null");
  GPAC_REQUIRE(params != nullptr, "params is null");
  GPAC_REQUIRE(out != nullptr, "output array is null");
  if (repeats == 0) {
    set_error("repeats must be at least 1");
    return GPAC_ERROR_INVALID_ARGUMENT;
  }
  try {
    gpac::GpacConfig base = to_config(*params);
    gpac::validate_config(base, ds->data);
    // one graph serves every seed; it depends only on (data, k, sigma, theta)
    gpac::GraphPair graphs = gpac::build_graphs(ds->data, base);
    for (uint32_t r = 0; r < repeats; ++r) {
      gpac::GpacConfig cfg = base;
      cfg.seed = base.seed + r;
      gpac::GpacSolver solver(ds->data, cfg);
      solver.attach_graphs(&graphs);
      out[r] = from_fit(solver.fit());
    }
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

gpac_status gpac_kmeans(const gpac_dataset* ds, uint64_t clusters,
                        uint64_t seed, uint32_t max_iters, gpac_result** out) {
  GPAC_REQUIRE(ds != nullptr, "dataset is null");
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  try {
    auto t0 = std::chrono::steady_clock::now();
    gpac::KmeansResult km =
        gpac::kmeans_fit(ds->data, clusters, seed, max_iters);
    auto* r = new gpac_result;
    r->labels = std::move(km.assignment.labels);
    r->clusters = clusters;
    for (std::size_t it = 0; it < km.inertia_trace.size(); ++it)
      r->trace.push_back({it, km.inertia_trace[it], 0, 0.0, 0.0});
    r->timings.total_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    r->timings.optimize_ms = r->timings.total_ms;
    *out = r;
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

namespace {

gpac_status fcm_common(const gpac_dataset* ds, uint64_t clusters, double m,
                       double beta, uint32_t k, double sigma, uint64_t seed,
                       double tol, uint32_t max_iters, bool with_lcc,
                       gpac_result** out) {
  try {
    auto t0 = std::chrono::steady_clock::now();
    double graph_ms = 0.0;
    gpac::FcmResult fr;
    if (with_lcc) {
      auto g0 = std::chrono::steady_clock::now();
      gpac::KnnGraph graph = gpac::build_knn_graph(
          ds->data, k, sigma > 0.0 ? std::optional<double>(sigma)
                                   : std::nullopt);
      graph_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - g0)
                     .count();
      fr = gpac::fcm_lcc_fit(ds->data, clusters, m, beta, graph, seed, tol,
                             max_iters);
    } else {
      fr = gpac::fcm_fit(ds->data, clusters, m, seed, tol, max_iters);
    }
    auto* r = new gpac_result;
    r->clusters = clusters;
    r->probs = std::move(fr.partition.probs);
    r->labels.resize(ds->data.n);
    for (std::size_t i = 0; i < ds->data.n; ++i) {
      const double* row = r->probs.data() + i * clusters;
      std::size_t best = 0;
      for (std::size_t l = 1; l < clusters; ++l)
        if (row[l] > row[best]) best = l;
      r->labels[i] = static_cast<std::int64_t>(best);
    }
    for (std::size_t it = 0; it < fr.objective_trace.size(); ++it)
      r->trace.push_back({it, fr.objective_trace[it], 0, beta, 0.0});
    r->timings.total_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    r->timings.graph_ms = graph_ms;
    r->timings.optimize_ms = r->timings.total_ms - graph_ms;
    *out = r;
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

}  // namespace

gpac_status gpac_fcm(const gpac_dataset* ds, uint64_t clusters, double m,
                     uint64_t seed, double tol, uint32_t max_iters,
                     gpac_result** out) {
  GPAC_REQUIRE(ds != nullptr, "dataset is null");
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  return fcm_common(ds, clusters, m, 0.0, 0, 0.0, seed, tol, max_iters, false,
                    out);
}

gpac_status gpac_fcm_lcc(const gpac_dataset* ds, uint64_t clusters, double m,
                         double beta, uint32_t k, double sigma, uint64_t seed,
                         double tol, uint32_t max_iters, gpac_result** out) {
  GPAC_REQUIRE(ds != nullptr, "dataset is null");
  GPAC_REQUIRE(out != nullptr, "output handle is null");
  return fcm_common(ds, clusters, m, beta, k, sigma, seed, tol, max_iters,
                    true, out);
}

uint64_t gpac_result_n(const gpac_result* r) {
  return r ? r->labels.size() : 0;
}

uint64_t gpac_result_clusters(const gpac_result* r) {
  return r ? r->clusters : 0;
}

const int64_t* gpac_result_labels(const gpac_result* r) {
  return r ? r->labels.data() : nullptr;
}

const double* gpac_result_probs(const gpac_result* r) {
  return r && !r->probs.empty() ? r->probs.data() : nullptr;
}

uint64_t gpac_result_trace_size(const gpac_result* r) {
  return r ? r->trace.size() : 0;
}

gpac_status gpac_result_trace_row(const gpac_result* r, uint64_t index,
                                  gpac_trace_row* out) {
  GPAC_REQUIRE(r != nullptr, "result is null");
  GPAC_REQUIRE(out != nullptr, "output row is null");
  if (index >= r->trace.size()) {
    set_error("trace index out of range");
    return GPAC_ERROR_INVALID_ARGUMENT;
  }
  const gpac::EpochRecord& rec = r->trace[index];
  out->epoch = rec.epoch;
  out->objective = rec.objective;
  out->labels_changed = rec.labels_changed;
  out->beta = rec.beta;
  out->elapsed_ms = rec.elapsed_ms;
  return GPAC_OK;
}

double gpac_result_graph_ms(const gpac_result* r) {
  return r ? r->timings.graph_ms : 0.0;
}

double gpac_result_optimize_ms(const gpac_result* r) {
  return r ? r->timings.optimize_ms : 0.0;
}

double gpac_result_total_ms(const gpac_result* r) {
  return r ? r->timings.total_ms : 0.0;
}

void gpac_result_destroy(gpac_result* r) { delete r; }

namespace {

gpac_status metric_common(const int64_t* pred, const int64_t* truth,
                          uint64_t n, double* out,
                          double (*fn)(std::span<const std::int64_t>,
                                       std::span<const std::int64_t>)) {
  GPAC_REQUIRE(pred != nullptr, "predicted labels are null");
  GPAC_REQUIRE(truth != nullptr, "true labels are null");
  GPAC_REQUIRE(out != nullptr, "output value is null");
  try {
    *out = fn({pred, n}, {truth, n});
    return GPAC_OK;
  } catch (...) {
    return handle_exception();
  }
}

}  // namespace

gpac_status gpac_metric_nmi(const int64_t* pred, const int64_t* truth,
                            uint64_t n, double* out) {
  return metric_common(pred, truth, n, out,
                       [](std::span<const std::int64_t> p,
                          std::span<const std::int64_t> t) {
                         return gpac::nmi(p, t);
                       });
}

gpac_status gpac_metric_acc(const int64_t* pred, const int64_t* truth,
                            uint64_t n, double* out) {
  return metric_common(pred, truth, n, out, gpac::acc);
}

gpac_status gpac_metric_ari(const int64_t* pred, const int64_t* truth,
                            uint64_t n, double* out) {
  return metric_common(pred, truth, n, out, gpac::ari);
}

}  // extern "C"
