/* C API for the synsetrank shared library.
 *
 * Every object is an opaque handle created and destroyed here; every fallible
 * call returns a status code, with srk_last_error() holding a thread-local
 * message for the most recent failure on the calling thread. Strings returned
 * by accessor functions are owned by their handle and stay valid until the
 * handle is freed.
 */
#ifndef SYNSETRANK_H
#define SYNSETRANK_H

#include <stdint.h>

#if defined(_WIN32)
#define SRK_API __declspec(dllexport)
#else
#define SRK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srk_status {
  SRK_OK = 0,
  SRK_ERROR_INVALID_ARGUMENT = 1, /* bad argument or precondition */
  SRK_ERROR_IO = 2,               /* file could not be opened / read / written */
  SRK_ERROR_PARSE = 3,            /* malformed input data */
  SRK_ERROR_DOMAIN = 4,           /* mathematically undefined request */
  SRK_ERROR_INTERNAL = 5
} srk_status;

typedef enum srk_method {
  SRK_METHOD_FREQUENCY = 0,
  SRK_METHOD_MORO = 1,
  SRK_METHOD_PAGERANK = 2,
  SRK_METHOD_SYNSETRANK = 3
} srk_method;

typedef struct srk_graph srk_graph;
typedef struct srk_ranking srk_ranking;
typedef struct srk_dataset srk_dataset;
typedef struct srk_grid_result srk_grid_result;
typedef struct srk_report srk_report;

SRK_API const char* srk_version(void);
SRK_API const char* srk_status_name(srk_status status);

/* Message for the most recent error on this thread; empty string if none. */
SRK_API const char* srk_last_error(void);

/* ---- graphs ------------------------------------------------------------ */

/* Loads a `src<TAB>dst<TAB>label` edge list. Pass node_count/label_count < 0
 * to take them from a `# nodes=N labels=L` header line instead. */
SRK_API srk_status srk_graph_load(const char* path, int64_t node_count,
                                  int64_t label_count, srk_graph** out);
SRK_API srk_status srk_graph_augment_reverse(const srk_graph* graph, srk_graph** out);
SRK_API void srk_graph_free(srk_graph* graph);

SRK_API int64_t srk_graph_node_count(const srk_graph* graph);
SRK_API int64_t srk_graph_label_count(const srk_graph* graph);
SRK_API int64_t srk_graph_edge_count(const srk_graph* graph);
SRK_API int srk_graph_is_augmented(const srk_graph* graph);

/* out_degree must hold node_count doubles. weights may be NULL (all ones) or
 * hold label_count non-negative values. */
SRK_API srk_status srk_graph_weighted_out_degree(const srk_graph* graph,
                                                 const double* weights,
                                                 double* out_degree);

/* `label<TAB>weight` file; absent labels default to 1.0. out_weights must
 * hold label_count doubles. */
SRK_API srk_status srk_load_label_weights(const char* path, int64_t label_count,
                                          double* out_weights);

/* `node<TAB>value` file; absent nodes get 0. out_freq must hold node_count
 * doubles. */
SRK_API srk_status srk_load_frequencies(const char* path, int64_t node_count,
                                        double* out_freq);

/* ---- ranking ------------------------------------------------------------ */

typedef struct srk_rank_params {
  double alpha;     /* taxation, [0, 1] */
  double beta;      /* self-link stay probability, [0, 1] */
  int32_t steps;    /* walk length, >= 1 */
  int32_t moro_top_k; /* seed count for SRK_METHOD_MORO */
} srk_rank_params;

/* frequencies must hold node_count values; weights may be NULL (all ones);
 * params may be NULL for SRK_METHOD_FREQUENCY. */
SRK_API srk_status srk_rank(const srk_graph* graph, const double* frequencies,
                            const double* weights, srk_method method,
                            const srk_rank_params* params, srk_ranking** out);

SRK_API int64_t srk_ranking_size(const srk_ranking* ranking);
SRK_API double srk_ranking_score(const srk_ranking* ranking, int64_t node);
SRK_API int64_t srk_ranking_node_at(const srk_ranking* ranking, int64_t position);
/* `rank<TAB>node<TAB>score` rows; owned by the ranking handle. */
SRK_API const char* srk_ranking_tsv(srk_ranking* ranking);
SRK_API void srk_ranking_free(srk_ranking* ranking);

/* ---- evaluation ---------------------------------------------------------- */

/* Mann-Whitney AUC of scores against gold labels (1 = positive), ties
 * counting one half. */
SRK_API srk_status srk_auc(const double* scores, int64_t score_count,
                           const int64_t* gold_nodes, const uint8_t* gold_positive,
                           int64_t gold_count, double* out_auc);

/* Opens a dataset directory (edges.tsv with header, freq.tsv, gold.valid.tsv,
 * gold.test.tsv). */
SRK_API srk_status srk_dataset_open(const char* dir, int reverse_augment,
                                    srk_dataset** out);
/* Same bundle from explicit files; counts < 0 take the edge-list header. */
SRK_API srk_status srk_dataset_open_files(const char* edges_path, const char* freq_path,
                                          const char* gold_valid_path,
                                          const char* gold_test_path, int64_t node_count,
                                          int64_t label_count, int reverse_augment,
                                          const char* name, srk_dataset** out);
SRK_API const char* srk_dataset_name(const srk_dataset* dataset);
SRK_API int64_t srk_dataset_node_count(const srk_dataset* dataset);
SRK_API void srk_dataset_free(srk_dataset* dataset);

/* NULL spec means the default grid: alpha, beta in {0.0, 0.2, ..., 1.0} and
 * steps in {1, ..., 5}. */
typedef struct srk_grid_spec {
  const double* alphas;
  int64_t alpha_count;
  const double* betas;
  int64_t beta_count;
  const int32_t* steps;
  int64_t step_count;
} srk_grid_spec;

SRK_API srk_status srk_grid_search(const srk_dataset* dataset, srk_method method,
                                   const srk_grid_spec* spec, int32_t jobs,
                                   srk_grid_result** out);
SRK_API srk_status srk_grid_search_common(const srk_dataset* const* datasets,
                                          int64_t dataset_count, srk_method method,
                                          const srk_grid_spec* spec, int32_t jobs,
                                          srk_grid_result** out);

SRK_API int64_t srk_grid_result_config_count(const srk_grid_result* result);
SRK_API srk_status srk_grid_result_config(const srk_grid_result* result, int64_t index,
                                          double* alpha, double* beta, int32_t* steps,
                                          double* validation_auc);
SRK_API void srk_grid_result_best(const srk_grid_result* result, double* alpha,
                                  double* beta, int32_t* steps, double* validation_auc);
SRK_API int64_t srk_grid_result_relation_count(const srk_grid_result* result);
SRK_API const char* srk_grid_result_relation_name(const srk_grid_result* result,
                                                  int64_t index);
SRK_API double srk_grid_result_relation_test_auc(const srk_grid_result* result,
                                                 int64_t index);
SRK_API double srk_grid_result_mean_test_auc(const srk_grid_result* result);
/* Per-configuration table as CSV; owned by the result handle. */
SRK_API const char* srk_grid_result_csv(srk_grid_result* result);
SRK_API void srk_grid_result_free(srk_grid_result* result);

/* Six-method comparison over several datasets; moro_ks may be NULL to use
 * {10, 25, 50, 100, 200}. */
SRK_API srk_status srk_compare(const srk_dataset* const* datasets, int64_t dataset_count,
                               const srk_grid_spec* spec, const int32_t* moro_ks,
                               int64_t moro_k_count, int32_t jobs, srk_report** out);
SRK_API const char* srk_report_text(const srk_report* report);
SRK_API const char* srk_report_csv(const srk_report* report);
SRK_API void srk_report_free(srk_report* report);

/* ---- synthetic benchmark -------------------------------------------------- */

typedef struct srk_planted_spec {
  int64_t node_count;
  int64_t label_count; /* pre-augmentation */
  int64_t cluster_size;
  double seed_frequency_mass;
  double noise_frequency_mass;
  double degree_skew;
  double negatives_per_positive;
  uint64_t rng_seed;
} srk_planted_spec;

SRK_API void srk_planted_spec_defaults(srk_planted_spec* spec);

/* One dataset directory from one spec. */
SRK_API srk_status srk_generate_planted(const srk_planted_spec* spec, const char* dir);

/* relation_count datasets under dir/rel01, dir/rel02, ... with sub-seeds and
 * jitter derived from spec->rng_seed. */
SRK_API srk_status srk_generate_benchmark(const srk_planted_spec* spec,
                                          int32_t relation_count, const char* dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SYNSETRANK_H */
