/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sbmlab/sbmlab.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Failure {
  sbmlab_status status;
  std::string message;
};

void check(sbmlab_status s) {
  if (s != SBMLAB_OK) throw Failure{s, sbmlab_last_error()};
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { sbmlab_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct GraphDeleter {
  void operator()(sbmlab_graph* g) const { sbmlab_graph_free(g); }
};
using GraphPtr = std::unique_ptr<sbmlab_graph, GraphDeleter>;

struct Globals {
  std::uint64_t seed = 0;
  std::string out_dir;
};

std::string resolve(const Globals& g, const std::string& path) {
  if (path.empty() || g.out_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(g.out_dir) / path).string();
}

void ensure_parent(const std::string& path) {
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw Failure{SBMLAB_ERR_IO, "cannot create directory for " + path};
}

// Writes to the resolved path, or to stdout when no path is given.
void emit(const Globals& g, const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  const std::string path = resolve(g, out);
  ensure_parent(path);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure{SBMLAB_ERR_IO, "cannot open " + path + " for writing"};
  f << text << '\n';
  if (!f) throw Failure{SBMLAB_ERR_IO, "write failed for " + path};
}

struct ModelArgs {
  int n = 0;
  double alpha1 = 0, alpha2 = 0, beta = 0;
};

void add_rates(CLI::App* app, ModelArgs& m, bool required) {
  auto* a1 = app->add_option("--alpha1", m.alpha1, "Rate inside C1");
  auto* a2 = app->add_option("--alpha2", m.alpha2, "Rate inside C2");
  auto* b = app->add_option("--beta", m.beta, "Rate across communities");
  if (required) {
    a1->required();
    a2->required();
    b->required();
  }
}

struct GraphArgs {
  std::string graph;
  ModelArgs model;
  bool random_assignment = false;
};

// --graph file, or a fresh sample from --n and the rates with the global seed.
void add_graph_source(CLI::App* app, GraphArgs& a) {
  app->add_option("--graph", a.graph, "Graph file");
  app->add_option("--n", a.model.n, "Vertices when sampling");
  add_rates(app, a.model, false);
  app->add_flag("--random-assignment", a.random_assignment, "Random balanced labeling");
}

GraphPtr load_graph(const Globals& g, const GraphArgs& a) {
  sbmlab_graph* raw = nullptr;
  if (!a.graph.empty()) {
    check(sbmlab_graph_read(a.graph.c_str(), &raw));
  } else {
    if (a.model.n <= 0)
      throw Failure{SBMLAB_ERR_INVALID_INPUT, "give --graph or --n with --alpha1 --alpha2 --beta"};
    check(sbmlab_graph_sample(a.model.n, a.model.alpha1, a.model.alpha2, a.model.beta, g.seed,
                              a.random_assignment ? 1 : 0, &raw));
  }
  return GraphPtr(raw);
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Failure{SBMLAB_ERR_INVALID_INPUT, what + " is not valid JSON: " + e.what()};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Failure{SBMLAB_ERR_IO, "cannot open " + path};
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sbmlab: two-community SBM threshold, SDP and certificate experiments"};
  app.set_config("--config", "", "Key-value config file");
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--seed", glob.seed, "Random seed")->capture_default_str();
  app.add_option("--out-dir", glob.out_dir, "Directory for relative outputs");

  // sample
  auto* sample = app.add_subcommand("sample", "Draw an SBM graph");
  ModelArgs sm;
  std::string sample_out = "graph.txt";
  bool sample_random = false;
  sample->add_option("--n", sm.n, "Vertices")->required();
  add_rates(sample, sm, true);
  sample->add_flag("--random-assignment", sample_random, "Random balanced labeling");
  sample->add_option("--out", sample_out, "Graph file")->capture_default_str();

  // threshold
  auto* threshold = app.add_subcommand("threshold", "IT value, boundary and witness");
  ModelArgs tm;
  add_rates(threshold, tm, true);
  std::string threshold_out;
  threshold->add_option("--out", threshold_out, "JSON output (stdout if omitted)");

  // cloud
  auto* cloud = app.add_subcommand("cloud", "Cloud boundary polyline");
  ModelArgs cm;
  int community = 1, cloud_points = 720;
  std::string cloud_out = "boundary.csv";
  cloud->add_option("--community", community, "1 or 2")->required()->check(CLI::Range(1, 2));
  add_rates(cloud, cm, true);
  cloud->add_option("--points", cloud_points, "Boundary points")->capture_default_str();
  cloud->add_option("--out", cloud_out, "CSV output")->capture_default_str();

  // witness-region
  auto* region = app.add_subcommand("witness-region", "Region raster");
  double region_beta = 10;
  std::vector<double> a1_range{10, 40}, a2_range{10, 40};
  int region_res = 200;
  std::string region_out = "region.csv";
  region->add_option("--beta", region_beta, "Cross rate")->capture_default_str();
  region->add_option("--a1-range", a1_range, "alpha1 range lo hi")->expected(2)->delimiter(',');
  region->add_option("--a2-range", a2_range, "alpha2 range lo hi")->expected(2)->delimiter(',');
  region->add_option("--resolution", region_res, "Cells per axis")->capture_default_str();
  region->add_option("--out", region_out, "CSV output")->capture_default_str();

  // sdp-solve
  auto* sdp = app.add_subcommand("sdp-solve", "Solve the sym or asym SDP");
  GraphArgs sg;
  add_graph_source(sdp, sg);
  std::string problem = "sym", method = "auto", sdp_out;
  double tol = 0, tol_psd = 1e-8, ipm_tol = 1e-9;
  int max_iter = 50000;
  bool include_matrix = false;
  sdp->add_option("--problem", problem, "sym or asym")
      ->check(CLI::IsMember({"sym", "asym"}))
      ->capture_default_str();
  sdp->add_option("--method", method, "auto, splitting or interior-point")
      ->check(CLI::IsMember({"auto", "splitting", "interior-point"}))
      ->capture_default_str();
  sdp->add_option("--tol", tol, "Feasibility tolerance (0 selects 1e-6 n)");
  sdp->add_option("--tol-psd", tol_psd, "PSD tolerance")->capture_default_str();
  sdp->add_option("--ipm-tol", ipm_tol, "Interior point tolerance")->capture_default_str();
  sdp->add_option("--max-iter", max_iter, "Splitting iteration limit")->capture_default_str();
  sdp->add_flag("--include-matrix", include_matrix, "Write the full matrix");
  sdp->add_option("--out", sdp_out, "JSON output (stdout if omitted)");

  // swap-test
  auto* swap = app.add_subcommand("swap-test", "Best swap of the planted labeling");
  GraphArgs wg;
  add_graph_source(swap, wg);
  std::string swap_out;
  swap->add_option("--out", swap_out, "JSON output (stdout if omitted)");

  // events
  auto* events = app.add_subcommand("events", "Degree events at levels delta < epsilon");
  GraphArgs eg;
  add_graph_source(events, eg);
  std::optional<double> delta, epsilon;
  std::string events_out;
  events->add_option("--delta", delta, "F level (witness split point if omitted)");
  events->add_option("--epsilon", epsilon, "G level (witness split point if omitted)");
  events->add_option("--out", events_out, "JSON output (stdout if omitted)");

  // certificate
  auto* cert = app.add_subcommand("certificate", "Dual certificate lambda sweep");
  GraphArgs cg;
  add_graph_source(cert, cg);
  std::string lambda_grid = "auto", cert_out;
  int magnitudes = 20;
  double cert_tol = 1e-7;
  bool symmetric_weights = false;
  cert->add_option("--lambda-grid", lambda_grid, "Only 'auto' is supported")
      ->check(CLI::IsMember({"auto"}))
      ->capture_default_str();
  cert->add_option("--magnitudes", magnitudes, "Magnitudes per sign")->capture_default_str();
  cert->add_option("--tol", cert_tol, "Validity tolerance")->capture_default_str();
  cert->add_flag("--symmetric-weights", symmetric_weights, "Use a = 1, b = -1");
  cert->add_option("--out", cert_out, "JSON output (stdout if omitted)");

  // figure-data
  auto* figure = app.add_subcommand("figure-data", "CSV and manifest for a figure");
  int which = 1;
  std::optional<int> fig_res;
  figure->add_option("--fig", which, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
  figure->add_option("--resolution", fig_res, "Boundary points (1, 2) or cells per axis (3)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Seeded Monte Carlo experiment");
  std::string exp_json, kind, sdp_kind = "sym", exp_method = "auto";
  ModelArgs em;
  int trials = 20, threads = 0;
  std::optional<double> exp_delta, exp_epsilon;
  bool exp_symmetric = false, exp_random = false;
  exp->add_option("--json", exp_json, "Config object or experiment manifest");
  exp->add_option("--kind", kind, "Experiment kind")
      ->check(CLI::IsMember(
          {"swap-failure", "sdp-gap", "genie-error", "certificate-sweep", "event-frequencies"}));
  exp->add_option("--n", em.n, "Vertices");
  add_rates(exp, em, false);
  exp->add_option("--trials", trials, "Trials")->capture_default_str();
  exp->add_option("--threads", threads, "Worker threads (0 = all)");
  exp->add_option("--sdp", sdp_kind, "sym or asym")->check(CLI::IsMember({"sym", "asym"}));
  exp->add_option("--method", exp_method, "SDP method")
      ->check(CLI::IsMember({"auto", "splitting", "interior-point"}));
  exp->add_option("--delta", exp_delta, "Event level delta");
  exp->add_option("--epsilon", exp_epsilon, "Event level epsilon");
  exp->add_flag("--symmetric-weights", exp_symmetric, "Certificate levels a = 1, b = -1");
  exp->add_flag("--random-assignment", exp_random, "Random balanced labeling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SBMLAB_ERR_INVALID_INPUT;
  }

  try {
    if (*sample) {
      sbmlab_graph* raw = nullptr;
      check(sbmlab_graph_sample(sm.n, sm.alpha1, sm.alpha2, sm.beta, glob.seed,
                                sample_random ? 1 : 0, &raw));
      GraphPtr g(raw);
      const std::string path = resolve(glob, sample_out);
      ensure_parent(path);
      check(sbmlab_graph_write(g.get(), path.c_str()));
      std::cout << path << '\n';
    } else if (*threshold) {
      double it = 0, t = 0;
      check(sbmlab_it_value(tm.alpha1, tm.alpha2, tm.beta, &it, &t));
      Json j;
      j["alpha1"] = tm.alpha1;
      j["alpha2"] = tm.alpha2;
      j["beta"] = tm.beta;
      j["it"] = it;
      j["argmax_t"] = t;
      j["feasible"] = it >= 1;
      double boundary = 0;
      if (sbmlab_boundary_alpha(tm.beta, tm.alpha2, &boundary) == SBMLAB_OK)
        j["boundary_alpha1"] = boundary;
      else
        j["boundary_alpha1"] = nullptr;
      OwnedString w;
      check(sbmlab_witness(tm.alpha1, tm.alpha2, tm.beta, &w.p));
      j["witness"] = parse_json(w.str(), "witness");
      emit(glob, threshold_out, j.dump(2));
    } else if (*cloud) {
      const std::string path = resolve(glob, cloud_out);
      check(sbmlab_cloud_csv(community, cm.alpha1, cm.alpha2, cm.beta, cloud_points, path.c_str()));
      std::cout << path << '\n';
    } else if (*region) {
      const std::string path = resolve(glob, region_out);
      OwnedString summary;
      check(sbmlab_region_csv(region_beta, a1_range[0], a1_range[1], a2_range[0], a2_range[1],
                              region_res, path.c_str(), &summary.p));
      std::cout << summary.str() << '\n';
    } else if (*sdp) {
      auto g = load_graph(glob, sg);
      sbmlab_sdp_options opt;
      sbmlab_sdp_options_default(&opt);
      opt.problem = problem == "sym" ? 0 : 1;
      opt.alpha1 = sg.model.alpha1;
      opt.alpha2 = sg.model.alpha2;
      opt.beta = sg.model.beta;
      opt.method = method == "auto" ? 0 : method == "splitting" ? 1 : 2;
      opt.tol_feas = tol;
      opt.tol_psd = tol_psd;
      opt.ipm_tol = ipm_tol;
      opt.max_iter = max_iter;
      opt.include_matrix = include_matrix ? 1 : 0;
      OwnedString out;
      const sbmlab_status s = sbmlab_sdp_solve(g.get(), &opt, &out.p);
      if (out.p) emit(glob, sdp_out, out.str());
      check(s);
    } else if (*swap) {
      auto g = load_graph(glob, wg);
      OwnedString out;
      check(sbmlab_swap_test(g.get(), &out.p));
      emit(glob, swap_out, out.str());
    } else if (*events) {
      auto g = load_graph(glob, eg);
      if (delta.has_value() != epsilon.has_value())
        throw Failure{SBMLAB_ERR_INVALID_INPUT, "--delta and --epsilon go together"};
      double d = 0, e = 0;
      if (delta) {
        d = *delta;
        e = *epsilon;
      } else {
        OwnedString w;
        check(sbmlab_witness(eg.model.alpha1, eg.model.alpha2, eg.model.beta, &w.p));
        const Json wj = parse_json(w.str(), "witness");
        if (wj.is_null())
          throw Failure{SBMLAB_ERR_PRECONDITION,
                        "no witness pair at these rates; give --delta and --epsilon"};
        d = wj["delta"].get<double>();
        e = wj["epsilon"].get<double>();
      }
      OwnedString out;
      check(sbmlab_events(g.get(), d, e, &out.p));
      emit(glob, events_out, out.str());
    } else if (*cert) {
      auto g = load_graph(glob, cg);
      OwnedString out;
      check(sbmlab_certificate(g.get(), cg.model.alpha1, cg.model.alpha2, cg.model.beta,
                               symmetric_weights ? 1 : 0, magnitudes, cert_tol, &out.p));
      emit(glob, cert_out, out.str());
    } else if (*figure) {
      const int res = fig_res.value_or(which == 3 ? 200 : 720);
      const std::string dir = glob.out_dir.empty() ? "." : glob.out_dir;
      OwnedString manifest;
      check(sbmlab_figure_data(which, dir.c_str(), res, &manifest.p));
      std::cout << manifest.str() << '\n';
    } else if (*exp) {
      Json cfg;
      if (!exp_json.empty()) {
        cfg = parse_json(read_file(exp_json), exp_json);
        if (cfg.contains("config") && cfg["config"].is_object()) cfg = cfg["config"];
      } else {
        if (kind.empty()) throw Failure{SBMLAB_ERR_INVALID_INPUT, "give --kind or --json"};
        cfg["kind"] = kind;
        cfg["n"] = em.n;
        cfg["alpha1"] = em.alpha1;
        cfg["alpha2"] = em.alpha2;
        cfg["beta"] = em.beta;
        cfg["trials"] = trials;
        cfg["base_seed"] = glob.seed;
        cfg["assignment"] = exp_random ? "random-permutation" : "first-half";
        cfg["sdp"] = sdp_kind;
        cfg["method"] = exp_method;
        if (exp_delta) cfg["delta"] = *exp_delta;
        if (exp_epsilon) cfg["epsilon"] = *exp_epsilon;
        cfg["symmetric_weights"] = exp_symmetric;
      }
      cfg["threads"] = threads;
      const std::string dir = glob.out_dir.empty() ? "." : glob.out_dir;
      OwnedString result;
      check(sbmlab_experiment_run(cfg.dump().c_str(), dir.c_str(), &result.p));
      const Json r = parse_json(result.str(), "result");
      std::cout << r["aggregates"].dump(2) << '\n';
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    switch (f.status) {
      case SBMLAB_ERR_NOT_CONVERGED:
      case SBMLAB_ERR_IO:
        return static_cast<int>(f.status);
      case SBMLAB_ERR_INTERNAL:
        return 1;
      default:
        return SBMLAB_ERR_INVALID_INPUT;
    }
  }
  return 0;
}
