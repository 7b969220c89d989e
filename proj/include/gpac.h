/* Graph probability aggregation clustering - public C interface.
 *
 * All functions returning gpac_status produce GPAC_OK on success; on any
 * other status the output arguments are untouched and gpac_last_error()
 * describes the failure for the calling thread. Handles are opaque and
 * must be released with the matching _destroy call.
 */
#ifndef GPAC_H
#define GPAC_H

#include <stdint.h>

#if defined(_WIN32)
#define GPAC_API __declspec(dllexport)
#else
#define GPAC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpac_status {
  GPAC_OK = 0,
  GPAC_ERROR_NULL_POINTER = 1,
  GPAC_ERROR_INVALID_ARGUMENT = 2,
  GPAC_ERROR_IO = 3,
  GPAC_ERROR_NUMERIC = 4,
  GPAC_ERROR_UNKNOWN = 5
} gpac_status;

typedef struct gpac_dataset gpac_dataset;
typedef struct gpac_result gpac_result;

GPAC_API const char* gpac_version(void);

/* Message for the most recent failure on the calling thread. */
GPAC_API const char* gpac_last_error(void);

/* ---- datasets ---------------------------------------------------------- */

/* Copies features (row-major n x d) and optional labels (length n, or NULL). */
GPAC_API gpac_status gpac_dataset_create(const double* features, uint64_t n,
                                         uint64_t d, const int64_t* labels,
                                         gpac_dataset** out);

/* CSV file, one sample per row; label_column selects a 0-based integer
 * label column, or pass a negative value when there is none. */
GPAC_API gpac_status gpac_dataset_load_csv(const char* path,
                                           int64_t label_column,
                                           gpac_dataset** out);

/* Little-endian binary: u64 n, u64 d, then n*d f64 row-major. Labels are
 * n i64 in a sibling file; pass NULL when absent. */
GPAC_API gpac_status gpac_dataset_load_binary(const char* features_path,
                                              const char* labels_path,
                                              gpac_dataset** out);
GPAC_API gpac_status gpac_dataset_save_binary(const gpac_dataset* ds,
                                              const char* features_path,
                                              const char* labels_path);

/* Gaussian blobs on a center grid; noise points carry the nearest-center
 * label. Intended for experiments and smoke tests. */
GPAC_API gpac_status gpac_dataset_make_blobs(uint64_t n, uint64_t clusters,
                                             uint64_t dim, double cluster_std,
                                             double center_spacing,
                                             double noise_fraction,
                                             uint64_t seed, gpac_dataset** out);

GPAC_API uint64_t gpac_dataset_n(const gpac_dataset* ds);
GPAC_API uint64_t gpac_dataset_dim(const gpac_dataset* ds);
GPAC_API int gpac_dataset_has_labels(const gpac_dataset* ds);
GPAC_API const double* gpac_dataset_features(const gpac_dataset* ds);
/* NULL when the dataset carries no labels. */
GPAC_API const int64_t* gpac_dataset_labels(const gpac_dataset* ds);
GPAC_API void gpac_dataset_destroy(gpac_dataset* ds);

/* ---- clustering -------------------------------------------------------- */

enum {
  GPAC_INIT_KMEANSPP = 0,
  GPAC_INIT_RANDOM = 1,
  GPAC_INIT_ZERO = 2
};

typedef struct gpac_params {
  uint64_t clusters;       /* required, >= 2 */
  double m;                /* fuzzy weighting exponent, > 1 */
  double alpha;            /* neighborhood vote weight */
  double beta_max;         /* local-consistency ceiling */
  uint32_t beta_ramp_epochs;
  uint32_t k;              /* graph neighbor count */
  int32_t theta;           /* adjacency expansion hops; <= 0 selects the
                              log_k(n/clusters) rule */
  double sigma;            /* kernel bandwidth; <= 0 estimates it */
  uint64_t batch_size;
  uint32_t max_epochs;
  double convergence_tol;  /* changed-label fraction that counts as converged */
  uint64_t seed;
  int32_t init;            /* GPAC_INIT_* */
  int32_t hard_updates;    /* 1: score-driven auxiliary labels (default);
                              0: labels track argmax of the fuzzy matrix */
  int32_t allow_extreme_m; /* permit m below 1 + 1/64 */
} gpac_params;

/* Fills the published defaults (m=1.05, k=10, alpha=1, beta ramp to 1, ...). */
GPAC_API void gpac_params_init(gpac_params* params);

GPAC_API gpac_status gpac_fit(const gpac_dataset* ds,
                              const gpac_params* params, gpac_result** out);

/* Runs `repeats` fits with seeds params->seed + 0..repeats-1 into a
 * caller-provided handle array; the similarity graph is built once and
 * shared. */
GPAC_API gpac_status gpac_fit_repeats(const gpac_dataset* ds,
                                      const gpac_params* params,
                                      uint32_t repeats, gpac_result** out);

/* Baselines. max_iters = 0 for kmeans yields the seeding assignment only. */
GPAC_API gpac_status gpac_kmeans(const gpac_dataset* ds, uint64_t clusters,
                                 uint64_t seed, uint32_t max_iters,
                                 gpac_result** out);
GPAC_API gpac_status gpac_fcm(const gpac_dataset* ds, uint64_t clusters,
                              double m, uint64_t seed, double tol,
                              uint32_t max_iters, gpac_result** out);
GPAC_API gpac_status gpac_fcm_lcc(const gpac_dataset* ds, uint64_t clusters,
                                  double m, double beta, uint32_t k,
                                  double sigma, uint64_t seed, double tol,
                                  uint32_t max_iters, gpac_result** out);

/* ---- results ----------------------------------------------------------- */

typedef struct gpac_trace_row {
  uint64_t epoch;
  double objective;
  uint64_t labels_changed;
  double beta;
  double elapsed_ms;
} gpac_trace_row;

GPAC_API uint64_t gpac_result_n(const gpac_result* r);
GPAC_API uint64_t gpac_result_clusters(const gpac_result* r);
GPAC_API const int64_t* gpac_result_labels(const gpac_result* r);
/* Row-major n x clusters membership matrix; NULL for hard-only methods. */
GPAC_API const double* gpac_result_probs(const gpac_result* r);
GPAC_API uint64_t gpac_result_trace_size(const gpac_result* r);
GPAC_API gpac_status gpac_result_trace_row(const gpac_result* r,
                                           uint64_t index,
                                           gpac_trace_row* out);
GPAC_API double gpac_result_graph_ms(const gpac_result* r);
GPAC_API double gpac_result_optimize_ms(const gpac_result* r);
GPAC_API double gpac_result_total_ms(const gpac_result* r);
GPAC_API void gpac_result_destroy(gpac_result* r);

/* ---- evaluation -------------------------------------------------------- */

GPAC_API gpac_status gpac_metric_nmi(const int64_t* pred, const int64_t* truth,
                                     uint64_t n, double* out);
GPAC_API gpac_status gpac_metric_acc(const int64_t* pred, const int64_t* truth,
                                     uint64_t n, double* out);
GPAC_API gpac_status gpac_metric_ari(const int64_t* pred, const int64_t* truth,
                                     uint64_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GPAC_H */
