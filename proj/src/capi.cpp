/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/sbmlab.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "sbmlab/error.hpp"
#include "sbmlab/graph_io.hpp"
#include "sbmlab/harness.hpp"

struct sbmlab_graph {
  sbmlab::LabeledGraph graph;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
sbmlab_status guarded(Fn fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const sbmlab::Error& e) {
    last_error = e.what();
    return static_cast<sbmlab_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return SBMLAB_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) sbmlab::throw_invalid(std::string(what) + " must not be NULL");
}

sbmlab::Rates rates(double a1, double a2, double b) { return {a1, a2, b}; }

void check_rates(double a1, double a2, double b) {
  sbmlab::require(std::isfinite(a1) && std::isfinite(a2) && std::isfinite(b) && a1 >= 0 &&
                      a2 >= 0 && b >= 0,
                  "rates must be finite and nonnegative");
}

}  // namespace

extern "C" {

const char* sbmlab_version(void) { return "0.1.0"; }

const char* sbmlab_last_error(void) { return last_error.c_str(); }

void sbmlab_string_free(char* s) { std::free(s); }

sbmlab_status sbmlab_graph_sample(int n, double alpha1, double alpha2, double beta, uint64_t seed,
                                  int random_assignment, sbmlab_graph** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const auto params = sbmlab::ModelParams::create(n, alpha1, alpha2, beta);
    const auto assign =
        random_assignment ? sbmlab::Assignment::RandomPermutation : sbmlab::Assignment::FirstHalf;
    *out = new sbmlab_graph{sbmlab::sample({params, seed, assign})};
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_graph_read(const char* path, sbmlab_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    *out = new sbmlab_graph{sbmlab::read_graph_file(path)};
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_graph_write(const sbmlab_graph* g, const char* path) {
  return guarded([&] {
    need(g, "graph");
    need(path, "path");
    sbmlab::write_graph_file(g->graph, path);
    return SBMLAB_OK;
  });
}

void sbmlab_graph_free(sbmlab_graph* g) { delete g; }

int sbmlab_graph_n(const sbmlab_graph* g) { return g ? g->graph.n() : 0; }

long long sbmlab_graph_edges(const sbmlab_graph* g) { return g ? g->graph.num_edges() : 0; }

int sbmlab_graph_label(const sbmlab_graph* g, int u) {
  if (!g || u < 0 || u >= g->graph.n()) return 0;
  return g->graph.truth()[u];
}

int sbmlab_graph_has_edge(const sbmlab_graph* g, int u, int v) {
  if (!g || u < 0 || v < 0 || u >= g->graph.n() || v >= g->graph.n()) return 0;
  return g->graph.has_edge(u, v) ? 1 : 0;
}

sbmlab_status sbmlab_it_value(double alpha1, double alpha2, double beta, double* value,
                              double* argmax_t) {
  return guarded([&] {
    need(value, "value");
    check_rates(alpha1, alpha2, beta);
    const auto e = sbmlab::it_value(rates(alpha1, alpha2, beta));
    *value = e.value;
    if (argmax_t) *argmax_t = e.argmax_t;
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_boundary_alpha(double beta, double alpha2, double* alpha1) {
  return guarded([&] {
    need(alpha1, "alpha1");
    *alpha1 = alpha2 < 0 ? sbmlab::boundary_alpha_symmetric(beta)
                         : sbmlab::boundary_alpha(beta, alpha2);
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_cloud_exponent(int community, double x, double y, double alpha1,
                                    double alpha2, double beta, double* out) {
  return guarded([&] {
    need(out, "out");
    check_rates(alpha1, alpha2, beta);
    *out = sbmlab::cloud_exponent(community, x, y, rates(alpha1, alpha2, beta));
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_cloud_csv(int community, double alpha1, double alpha2, double beta,
                               int points, const char* path) {
  return guarded([&] {
    need(path, "path");
    check_rates(alpha1, alpha2, beta);
    const auto pts = sbmlab::cloud_boundary(community, rates(alpha1, alpha2, beta), points);
    std::ostringstream out;
    out.precision(17);
    out << "x,y,exponent\n";
    for (const auto& p : pts) out << p.x << ',' << p.y << ',' << p.exponent << '\n';
    sbmlab::write_text_file(path, out.str());
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_witness(double alpha1, double alpha2, double beta, char** json) {
  return guarded([&] {
    need(json, "json");
    check_rates(alpha1, alpha2, beta);
    const auto w = sbmlab::find_witness(rates(alpha1, alpha2, beta));
    *json = dup_string(w ? sbmlab::to_json(*w).dump() : "null");
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_region_csv(double beta, double a1_lo, double a1_hi, double a2_lo,
                                double a2_hi, int resolution, const char* path,
                                char** summary_json) {
  return guarded([&] {
    need(path, "path");
    sbmlab::require(resolution >= 2, "resolution must be at least 2");
    const auto raster = sbmlab::witness_region(beta, {a1_lo, a1_hi}, {a2_lo, a2_hi}, resolution,
                                               resolution);
    std::ostringstream out;
    sbmlab::write_region_csv(raster, out);
    sbmlab::write_text_file(path, out.str());
    if (summary_json) {
      sbmlab::Json s;
      s["beta"] = beta;
      s["resolution"] = resolution;
      for (auto c : {sbmlab::RegionClass::Infeasible, sbmlab::RegionClass::FeasibleNoWitness,
                     sbmlab::RegionClass::FeasibleWitness})
        s["cells"][sbmlab::region_name(c)] =
            std::count(raster.cells.begin(), raster.cells.end(), c);
      *summary_json = dup_string(s.dump());
    }
    return SBMLAB_OK;
  });
}

void sbmlab_sdp_options_default(sbmlab_sdp_options* opt) {
  if (!opt) return;
  const sbmlab::SolverOptions d;
  *opt = sbmlab_sdp_options{};
  opt->problem = 0;
  opt->method = 0;
  opt->tol_feas = d.tol_feas;
  opt->tol_psd = d.tol_psd;
  opt->max_iter = d.max_iter;
  opt->ipm_tol = d.ipm_tol;
  opt->include_matrix = 0;
}

sbmlab_status sbmlab_sdp_solve(const sbmlab_graph* g, const sbmlab_sdp_options* opt,
                               char** json) {
  return guarded([&] {
    need(g, "graph");
    need(opt, "options");
    need(json, "json");
    *json = nullptr;
    sbmlab::require(opt->problem == 0 || opt->problem == 1, "problem must be 0 (sym) or 1 (asym)");
    sbmlab::require(opt->method >= 0 && opt->method <= 2, "method must be 0, 1 or 2");
    sbmlab::SolverOptions so;
    so.method = static_cast<sbmlab::SolverMethod>(opt->method);
    so.tol_feas = opt->tol_feas;
    so.tol_psd = opt->tol_psd;
    so.max_iter = opt->max_iter;
    so.ipm_tol = opt->ipm_tol;
    sbmlab::require(so.tol_feas >= 0 && so.tol_psd > 0 && so.ipm_tol > 0 && so.max_iter >= 1,
                    "solver tolerances and iteration limit must be positive");

    double a = 1, b = -1;
    sbmlab::SdpProblem p;
    if (opt->problem == 0) {
      p = sbmlab::build_sym_sdp(g->graph);
    } else {
      const auto params =
          sbmlab::ModelParams::create(g->graph.n(), opt->alpha1, opt->alpha2, opt->beta);
      const auto w = sbmlab::mle_weights(params);
      a = w.a;
      b = w.b;
      p = sbmlab::build_asym_sdp(g->graph, w);
    }
    const auto sol = sbmlab::solve(p, so);
    sbmlab::Json j;
    j["problem"] = opt->problem == 0 ? "sym" : "asym";
    j["n"] = g->graph.n();
    j["levels"] = {{"a", a}, {"b", b}};
    j["tol_feas"] = sbmlab::effective_tol_feas(so, g->graph.n());
    j["solution"] = sbmlab::to_json(sol, opt->include_matrix != 0);
    try {
      j["truth"] = sbmlab::to_json(sbmlab::compare_with_truth(
          sol, p, sbmlab::planted_matrix(g->graph.truth(), a, b)));
    } catch (const sbmlab::Error& e) {
      if (e.code() != sbmlab::ErrorCode::Precondition) throw;
      j["truth"] = {{"error", e.what()}};
    }
    *json = dup_string(j.dump(2));
    if (sol.status != sbmlab::SolveStatus::Converged) {
      last_error = std::string("solver stopped with status ") + sbmlab::status_name(sol.status);
      return SBMLAB_ERR_NOT_CONVERGED;
    }
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_swap_test(const sbmlab_graph* g, char** json) {
  return guarded([&] {
    need(g, "graph");
    need(json, "json");
    const auto scan = sbmlab::scan_swaps(g->graph, g->graph.truth());
    sbmlab::Json j = sbmlab::to_json(scan);
    j["n"] = g->graph.n();
    j["z_planted"] = sbmlab::z_objective(g->graph, g->graph.truth());
    *json = dup_string(j.dump(2));
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_events(const sbmlab_graph* g, double delta, double epsilon, char** json) {
  return guarded([&] {
    need(g, "graph");
    need(json, "json");
    *json = dup_string(sbmlab::to_json(sbmlab::event_scan(g->graph, delta, epsilon)).dump(2));
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_certificate(const sbmlab_graph* g, double alpha1, double alpha2, double beta,
                                 int symmetric_weights, int magnitudes, double tol, char** json) {
  return guarded([&] {
    need(g, "graph");
    need(json, "json");
    const auto params = sbmlab::ModelParams::create(g->graph.n(), alpha1, alpha2, beta);
    const sbmlab::CertificateWeights w =
        symmetric_weights ? sbmlab::CertificateWeights{1, -1}
                          : sbmlab::CertificateWeights::of(sbmlab::mle_weights(params));
    const auto grid = sbmlab::default_lambda_grid(g->graph, magnitudes);
    const auto sweep = sbmlab::lambda_sweep(g->graph, w, sbmlab::ExpectationModel::of(params),
                                            grid, tol, 1);
    sbmlab::Json j;
    j["weights"] = {{"a", w.a}, {"b", w.b}};
    j["best"] = sbmlab::to_json(sweep.best);
    j["sweep"] = sbmlab::Json::array();
    for (const auto& r : sweep.all) j["sweep"].push_back(sbmlab::to_json(r));
    j["failure"] = sbmlab::to_json(sbmlab::failure_witness_stats(g->graph, w));
    *json = dup_string(j.dump(2));
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_figure_data(int which, const char* out_dir, int resolution,
                                 char** manifest_path) {
  return guarded([&] {
    need(out_dir, "out_dir");
    const auto path = sbmlab::emit_figure_data(which, out_dir, resolution);
    if (manifest_path) *manifest_path = dup_string(path);
    return SBMLAB_OK;
  });
}

sbmlab_status sbmlab_experiment_run(const char* config_json, const char* out_dir,
                                    char** result_json) {
  return guarded([&] {
    need(config_json, "config_json");
    sbmlab::Json parsed;
    try {
      parsed = sbmlab::Json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      sbmlab::throw_invalid(std::string("config is not valid JSON: ") + e.what());
    }
    const auto result = sbmlab::run_experiment(sbmlab::config_from_json(parsed));
    if (out_dir) sbmlab::write_experiment(result, out_dir);
    if (result_json) *result_json = dup_string(result.to_json().dump(2));
    return SBMLAB_OK;
  });
}

}  // extern "C"
