/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef SBMLAB_H
#define SBMLAB_H

#include <stdint.h>

#if defined(SBMLAB_BUILDING_LIBRARY)
#define SBMLAB_API __attribute__((visibility("default")))
#else
#define SBMLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum sbmlab_status {
  SBMLAB_OK = 0,
  SBMLAB_ERR_INTERNAL = 1,
  SBMLAB_ERR_INVALID_INPUT = 2,
  SBMLAB_ERR_NOT_CONVERGED = 3,
  SBMLAB_ERR_IO = 4,
  SBMLAB_ERR_NO_ROOT = 5,
  SBMLAB_ERR_PRECONDITION = 6
} sbmlab_status;

typedef struct sbmlab_graph sbmlab_graph;

SBMLAB_API const char* sbmlab_version(void);
/* Message of the last failed call on this thread; "" if none. */
SBMLAB_API const char* sbmlab_last_error(void);
/* Releases strings returned through char** out parameters. NULL is ignored. */
SBMLAB_API void sbmlab_string_free(char* s);

/* Graphs */
SBMLAB_API sbmlab_status sbmlab_graph_sample(int n, double alpha1, double alpha2, double beta,
                                             uint64_t seed, int random_assignment,
                                             sbmlab_graph** out);
SBMLAB_API sbmlab_status sbmlab_graph_read(const char* path, sbmlab_graph** out);
SBMLAB_API sbmlab_status sbmlab_graph_write(const sbmlab_graph* g, const char* path);
SBMLAB_API void sbmlab_graph_free(sbmlab_graph* g);
SBMLAB_API int sbmlab_graph_n(const sbmlab_graph* g);
SBMLAB_API long long sbmlab_graph_edges(const sbmlab_graph* g);
/* +1 or -1; 0 on a bad index. */
SBMLAB_API int sbmlab_graph_label(const sbmlab_graph* g, int u);
SBMLAB_API int sbmlab_graph_has_edge(const sbmlab_graph* g, int u, int v);

/* Threshold geometry */
SBMLAB_API sbmlab_status sbmlab_it_value(double alpha1, double alpha2, double beta, double* value,
                                         double* argmax_t);
/* alpha2 < 0 selects the diagonal alpha1 = alpha2. */
SBMLAB_API sbmlab_status sbmlab_boundary_alpha(double beta, double alpha2, double* alpha1);
SBMLAB_API sbmlab_status sbmlab_cloud_exponent(int community, double x, double y, double alpha1,
                                               double alpha2, double beta, double* out);
/* CSV x,y,exponent of the exponent = -1 level set. */
SBMLAB_API sbmlab_status sbmlab_cloud_csv(int community, double alpha1, double alpha2, double beta,
                                          int points, const char* path);
/* JSON witness pair, or "null" when the clouds are separable by x = y. */
SBMLAB_API sbmlab_status sbmlab_witness(double alpha1, double alpha2, double beta, char** json);
/* CSV alpha1,alpha2,beta,it,gap,region; summary JSON with class counts. */
SBMLAB_API sbmlab_status sbmlab_region_csv(double beta, double a1_lo, double a1_hi, double a2_lo,
                                           double a2_hi, int resolution, const char* path,
                                           char** summary_json);

/* SDP */
typedef struct sbmlab_sdp_options {
  int problem; /* 0 sym, 1 asym (needs alpha1, alpha2, beta for the weights) */
  double alpha1;
  double alpha2;
  double beta;
  int method; /* 0 auto, 1 splitting, 2 interior point */
  double tol_feas; /* 0 selects 1e-6 n */
  double tol_psd;
  int max_iter;
  double ipm_tol;
  int include_matrix;
} sbmlab_sdp_options;

SBMLAB_API void sbmlab_sdp_options_default(sbmlab_sdp_options* opt);
/* Writes the solution JSON even when the status is SBMLAB_ERR_NOT_CONVERGED. */
SBMLAB_API sbmlab_status sbmlab_sdp_solve(const sbmlab_graph* g, const sbmlab_sdp_options* opt,
                                          char** json);

/* Best swap of the planted labeling. */
SBMLAB_API sbmlab_status sbmlab_swap_test(const sbmlab_graph* g, char** json);

SBMLAB_API sbmlab_status sbmlab_events(const sbmlab_graph* g, double delta, double epsilon,
                                       char** json);

/* Certificate sweep over the default lambda grid. symmetric_weights = 0 uses the
 * MLE levels of (alpha1, alpha2, beta). */
SBMLAB_API sbmlab_status sbmlab_certificate(const sbmlab_graph* g, double alpha1, double alpha2,
                                            double beta, int symmetric_weights, int magnitudes,
                                            double tol, char** json);

/* Returns the manifest path. */
SBMLAB_API sbmlab_status sbmlab_figure_data(int which, const char* out_dir, int resolution,
                                            char** manifest_path);

/* config_json is an experiment config object. out_dir may be NULL. */
SBMLAB_API sbmlab_status sbmlab_experiment_run(const char* config_json, const char* out_dir,
                                               char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* SBMLAB_H */
