/* dphist: differentially private histogram release over multidimensional
 * data cubes. C API of the shared library; all functionality of the engine
 * (ingest, release strategies, estimators, analysis, evaluation, ID3
 * classification, blocking) is reachable through these calls.
 *
 * Conventions:
 *  - every function returns a dph_status (0 = ok); on failure, out-params are
 *    untouched and dph_last_error() describes the problem (thread-local)
 *  - objects are opaque handles created by *_new/_from_* calls and released
 *    with the matching *_free; strings returned through char** out-params are
 *    owned by the caller and released with dph_string_free
 *  - per-dimension lo/hi arrays are inclusive bin indices, one per schema
 *    dimension, slowest-varying dimension first
 */

#ifndef DPHIST_H
#define DPHIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DPH_API __declspec(dllexport)
#else
#define DPH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dph_status {
    DPH_OK = 0,
    DPH_E_INVALID = 1, /* invalid argument or contract violation */
    DPH_E_PARSE = 2,   /* malformed JSON/CSV input */
    DPH_E_IO = 3,      /* file not readable */
    DPH_E_BUDGET = 4,  /* privacy budget exhausted */
    DPH_E_INTERNAL = 5
} dph_status;

typedef struct dph_schema dph_schema;     /* attribute domains of a cube */
typedef struct dph_dataset dph_dataset;   /* records + exact cell counts */
typedef struct dph_release dph_release;   /* a released (noisy) histogram */
typedef struct dph_workload dph_workload; /* a batch of range queries */
typedef struct dph_tree dph_tree;         /* a trained decision tree */

DPH_API const char* dph_version(void);
DPH_API const char* dph_last_error(void); /* message for the last failure on this thread */
DPH_API void dph_string_free(char* s);

/* ---- schema ---- */
DPH_API dph_status dph_schema_from_json(const char* json_text, dph_schema** out);
DPH_API dph_status dph_schema_from_file(const char* path, dph_schema** out);
DPH_API dph_status dph_schema_to_json(const dph_schema* s, char** out_json);
DPH_API void dph_schema_free(dph_schema* s);
DPH_API dph_status dph_schema_ndims(const dph_schema* s, size_t* out);
DPH_API dph_status dph_schema_cells(const dph_schema* s, size_t* out);
DPH_API dph_status dph_schema_dim_size(const dph_schema* s, size_t dim, size_t* out);
DPH_API dph_status dph_schema_dim_name(const dph_schema* s, size_t dim, char** out);
DPH_API dph_status dph_schema_dim_index(const dph_schema* s, const char* name, size_t* out);

/* ---- dataset ---- */
DPH_API dph_status dph_dataset_from_csv(const dph_schema* s, const char* csv_text,
                                        dph_dataset** out);
DPH_API dph_status dph_dataset_from_csv_file(const dph_schema* s, const char* path,
                                             dph_dataset** out);
DPH_API void dph_dataset_free(dph_dataset* d);
DPH_API dph_status dph_dataset_rows(const dph_dataset* d, size_t* out);
/* exact per-cell counts; `counts` must hold dph_schema_cells doubles */
DPH_API dph_status dph_dataset_counts(const dph_dataset* d, double* counts);
DPH_API dph_status dph_dataset_true_answer(const dph_dataset* d, const size_t* lo,
                                           const size_t* hi, double* out);

/* ---- release ---- */
DPH_API dph_status dph_release_cell(const dph_dataset* d, double alpha, uint64_t seed,
                                    dph_release** out);
/* two-phase release: alpha1 on the cell histogram, alpha - alpha1 on the
 * noisy counts of the kd partition (pass alpha1 <= 0 for the alpha/4 default;
 * max_depth 0 = automatic) */
DPH_API dph_status dph_release_dpcube(const dph_dataset* d, double alpha, double alpha1,
                                      double xi0, size_t min_cells, size_t max_depth,
                                      uint64_t seed, dph_release** out);
DPH_API void dph_release_free(dph_release* r);
DPH_API dph_status dph_release_to_json(const dph_release* r, char** out_json);
DPH_API dph_status dph_release_from_json(const char* json_text, dph_release** out);
DPH_API dph_status dph_release_from_file(const char* path, dph_release** out);
/* budget charges made while creating this release, one JSON object per line;
 * empty string for a release loaded from JSON */
DPH_API dph_status dph_release_ledger_jsonl(const dph_release* r, char** out);
DPH_API dph_status dph_release_schema(const dph_release* r, dph_schema** out);
DPH_API dph_status dph_release_box_count(const dph_release* r, size_t* out);
DPH_API dph_status dph_release_alphas(const dph_release* r, double* out_alpha1,
                                      double* out_alpha2);

/* ---- estimation; method is "uniform", "ls" or "cell" ---- */
DPH_API dph_status dph_estimate(const dph_release* r, const char* method, const size_t* lo,
                                const size_t* hi, double* out);

/* ---- workload generation and evaluation ---- */
DPH_API dph_status dph_workload_generate(const dph_schema* s, size_t count, uint64_t seed,
                                         size_t min_size, size_t max_size, dph_workload** out);
DPH_API void dph_workload_free(dph_workload* w);
DPH_API dph_status dph_workload_count(const dph_workload* w, size_t* out);
DPH_API dph_status dph_workload_query(const dph_workload* w, size_t i, size_t* lo, size_t* hi,
                                      size_t* out_cells);
DPH_API dph_status dph_eval_avg_abs_error(const dph_dataset* d, const dph_release* r,
                                          const dph_workload* w, const char* method, double* out);
DPH_API dph_status dph_eval_usefulness(const dph_dataset* d, const dph_release* r,
                                       const dph_workload* w, const char* method, double eps,
                                       double* out);
/* weighted variance of the release's subcube partition over the true counts */
DPH_API dph_status dph_weighted_variance(const dph_dataset* d, const dph_release* r, double* out);

/* ---- closed-form and Monte-Carlo analysis ---- */
DPH_API dph_status dph_laplace_sum_tail_bound(size_t m, double b, double eps, double* out);
DPH_API dph_status dph_cell_usefulness_alpha(size_t m, double delta, double eps, double* out);
DPH_API dph_status dph_bilateral_gamma_pdf(size_t n, double alpha, double z, double* out);
DPH_API dph_status dph_uniform_usefulness_check(double gamma, size_t s, size_t np, double alpha2,
                                                double eps, double delta, int* out);
DPH_API dph_status dph_uniform_error_bound(double gamma, size_t s, size_t np, double alpha2,
                                           double* out);
DPH_API dph_status dph_uniform_error_general(size_t s, double alpha1, double eta, double* out);
DPH_API dph_status dph_ls_error_expected(size_t s, size_t np, double alpha1, double alpha2,
                                         size_t mc, uint64_t seed, double* out_mean,
                                         double* out_se);

/* ---- ID3 classification ---- */
/* train on exact counts (census-style) or on a release; `method` picks the
 * per-cell training counts for a release: "cell", "ls" or "uniform" */
DPH_API dph_status dph_id3_train_exact(const dph_dataset* d, const size_t* features,
                                       size_t n_features, size_t class_dim, size_t max_depth,
                                       dph_tree** out);
DPH_API dph_status dph_id3_train_release(const dph_release* r, const char* method,
                                         const size_t* features, size_t n_features,
                                         size_t class_dim, size_t max_depth, dph_tree** out);
DPH_API void dph_tree_free(dph_tree* t);
DPH_API dph_status dph_tree_to_json(const dph_tree* t, char** out_json);
DPH_API dph_status dph_tree_accuracy(const dph_tree* t, const dph_dataset* d, double* out);

/* ---- blocking for record linkage ---- */
DPH_API dph_status dph_blocking_ratio(const dph_release* r, const dph_dataset* a,
                                      const dph_dataset* b, size_t* out_blocks,
                                      double* out_ratio);

/* ---- misc ---- */
DPH_API dph_status dph_config_hash64(const char* text, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* DPHIST_H */
