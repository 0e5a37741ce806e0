/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sbmlab/sbmlab.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

int main(void) {
  EXPECT(strcmp(sbmlab_version(), "0.1.0") == 0);

  double it = 0, t = 0;
  EXPECT(sbmlab_it_value(25, 25, 4, &it, &t) == SBMLAB_OK);
  EXPECT(fabs(it - 4.5) < 1e-9);
  EXPECT(sbmlab_it_value(-1, 25, 4, &it, &t) == SBMLAB_ERR_INVALID_INPUT);
  EXPECT(strlen(sbmlab_last_error()) > 0);

  double a1 = 0;
  EXPECT(sbmlab_boundary_alpha(10, -1, &a1) == SBMLAB_OK);
  EXPECT(fabs(a1 - (12 + 4 * sqrt(5.0))) < 1e-7);
  EXPECT(sbmlab_boundary_alpha(1, 100, &a1) == SBMLAB_ERR_NO_ROOT);

  char* json = NULL;
  EXPECT(sbmlab_witness(26.3, 12.5, 10, &json) == SBMLAB_OK);
  EXPECT(json && strstr(json, "\"slope\"") != NULL);
  sbmlab_string_free(json);
  EXPECT(sbmlab_witness(25, 25, 10, &json) == SBMLAB_OK);
  EXPECT(json && strcmp(json, "null") == 0);
  sbmlab_string_free(json);

  sbmlab_graph* g = NULL;
  EXPECT(sbmlab_graph_sample(60, 8, 8, 1, 5, 0, &g) == SBMLAB_OK);
  EXPECT(sbmlab_graph_n(g) == 60);
  EXPECT(sbmlab_graph_label(g, 0) == 1);
  EXPECT(sbmlab_graph_label(g, 59) == -1);
  EXPECT(sbmlab_graph_label(g, 60) == 0);
  EXPECT(sbmlab_graph_has_edge(g, 3, 3) == 0);

  sbmlab_graph* h = NULL;
  EXPECT(sbmlab_graph_sample(60, 8, 8, 1, 5, 0, &h) == SBMLAB_OK);
  EXPECT(sbmlab_graph_edges(g) == sbmlab_graph_edges(h));
  sbmlab_graph_free(h);
  EXPECT(sbmlab_graph_sample(60, 80, 8, 1, 5, 0, &h) == SBMLAB_ERR_INVALID_INPUT);
  EXPECT(h == NULL);

  EXPECT(sbmlab_swap_test(g, &json) == SBMLAB_OK);
  EXPECT(json && strstr(json, "\"best_delta\"") != NULL);
  sbmlab_string_free(json);

  sbmlab_sdp_options opt;
  sbmlab_sdp_options_default(&opt);
  EXPECT(sbmlab_sdp_solve(g, &opt, &json) == SBMLAB_OK);
  EXPECT(json && strstr(json, "\"status\"") != NULL);
  sbmlab_string_free(json);
  opt.method = 1;
  opt.max_iter = 1;
  EXPECT(sbmlab_sdp_solve(g, &opt, &json) == SBMLAB_ERR_NOT_CONVERGED);
  EXPECT(json != NULL);
  sbmlab_string_free(json);

  EXPECT(sbmlab_events(g, 2, 1, &json) == SBMLAB_ERR_INVALID_INPUT);
  EXPECT(sbmlab_graph_write(g, "/proc/sbmlab/none.txt") == SBMLAB_ERR_IO);
  EXPECT(strstr(sbmlab_last_error(), "/proc/sbmlab/none.txt") != NULL);

  EXPECT(sbmlab_experiment_run("{\"kind\":\"swap-failure\",\"n\":40,\"alpha1\":8,\"alpha2\":8,"
                               "\"beta\":1,\"trials\":2,\"threads\":1}",
                               NULL, &json) == SBMLAB_OK);
  EXPECT(json && strstr(json, "\"aggregates\"") != NULL);
  sbmlab_string_free(json);
  EXPECT(sbmlab_experiment_run("{\"bogus\":1}", NULL, &json) == SBMLAB_ERR_INVALID_INPUT);

  sbmlab_graph_free(g);
  sbmlab_graph_free(NULL);

  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  puts("C API checks passed");
  return 0;
}
