/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "sbmlab/error.hpp"
#include "sbmlab/mle.hpp"

namespace sbmlab {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kSeedRule =
    "trial k uses seed base_seed + k, whitened by splitmix64 before seeding mt19937_64";

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(k) for k = 0..count-1 on a small pool; records land in index order.
template <typename Fn>
std::vector<Json> parallel_trials(int count, int threads, Fn fn) {
  std::vector<Json> out(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        out[static_cast<std::size_t>(k)] = fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::min(count, resolve_threads(threads));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Json trial_header(int k, std::uint64_t seed) {
  Json j;
  j["trial"] = k;
  j["seed"] = seed;
  return j;
}

LabeledGraph trial_graph(const ExperimentConfig& cfg, std::uint64_t seed) {
  return sample({cfg.params(), seed, cfg.assignment});
}

Frequency tally(const std::vector<Json>& trials, const char* key) {
  Frequency f;
  for (const auto& t : trials) {
    if (!t.contains(key) || t[key].is_null()) continue;
    ++f.trials;
    if (t[key].get<bool>()) ++f.count;
  }
  return f;
}

std::vector<double> column(const std::vector<Json>& trials, const char* key) {
  std::vector<double> out;
  for (const auto& t : trials)
    if (t.contains(key) && t[key].is_number()) out.push_back(t[key].get<double>());
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* assignment_name(Assignment a) {
  return a == Assignment::FirstHalf ? "first-half" : "random-permutation";
}

Assignment parse_assignment(const std::string& s) {
  if (s == "first-half") return Assignment::FirstHalf;
  if (s == "random-permutation") return Assignment::RandomPermutation;
  throw_invalid("unknown assignment '" + s + "'");
}

SolverMethod parse_method(const std::string& s) {
  for (auto m : {SolverMethod::Auto, SolverMethod::Splitting, SolverMethod::InteriorPoint})
    if (s == method_name(m)) return m;
  throw_invalid("unknown solver method '" + s + "'");
}

}  // namespace

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::SwapFailure:
      return "swap-failure";
    case ExperimentKind::SdpGap:
      return "sdp-gap";
    case ExperimentKind::GenieError:
      return "genie-error";
    case ExperimentKind::CertificateSweep:
      return "certificate-sweep";
    case ExperimentKind::EventFrequencies:
      return "event-frequencies";
  }
  return "unknown";
}

ExperimentKind parse_kind(const std::string& s) {
  for (auto k : {ExperimentKind::SwapFailure, ExperimentKind::SdpGap, ExperimentKind::GenieError,
                 ExperimentKind::CertificateSweep, ExperimentKind::EventFrequencies})
    if (s == kind_name(k)) return k;
  throw_invalid("unknown experiment kind '" + s + "'");
}

const char* sdp_kind_name(SdpKind k) { return k == SdpKind::Sym ? "sym" : "asym"; }

SdpKind parse_sdp_kind(const std::string& s) {
  if (s == "sym") return SdpKind::Sym;
  if (s == "asym") return SdpKind::Asym;
  throw_invalid("unknown SDP problem '" + s + "'");
}

SolverOptions ExperimentConfig::solver_options() const {
  SolverOptions o;
  o.method = method;
  o.tol_feas = tol_feas;
  o.tol_psd = tol_psd;
  o.max_iter = max_iter;
  o.ipm_tol = ipm_tol;
  return o;
}

void validate(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, "trials must be at least 1");
  require(cfg.tol_feas >= 0 && cfg.tol_psd > 0 && cfg.ipm_tol > 0, "tolerances must be positive");
  require(cfg.max_iter >= 1, "max_iter must be positive");
  require(cfg.lambda_magnitudes >= 1, "lambda grid needs at least one magnitude");
  require(cfg.cert_tol >= 0, "certificate tolerance must be nonnegative");
  require(cfg.delta.has_value() == cfg.epsilon.has_value(), "delta and epsilon go together");
  if (cfg.delta) require(*cfg.epsilon > *cfg.delta, "epsilon must exceed delta");
  (void)cfg.params();
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["kind"] = kind_name(c.kind);
  j["n"] = c.n;
  j["alpha1"] = c.alpha1;
  j["alpha2"] = c.alpha2;
  j["beta"] = c.beta;
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["assignment"] = assignment_name(c.assignment);
  j["sdp"] = sdp_kind_name(c.sdp);
  j["method"] = method_name(c.method);
  j["tol_feas"] = c.tol_feas;
  j["tol_psd"] = c.tol_psd;
  j["max_iter"] = c.max_iter;
  j["ipm_tol"] = c.ipm_tol;
  j["delta"] = c.delta ? Json(*c.delta) : Json(nullptr);
  j["epsilon"] = c.epsilon ? Json(*c.epsilon) : Json(nullptr);
  j["lambda_magnitudes"] = c.lambda_magnitudes;
  j["cert_tol"] = c.cert_tol;
  j["symmetric_weights"] = c.symmetric_weights;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  require(j.is_object(), "experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "kind") c.kind = parse_kind(v.get<std::string>());
      else if (key == "n") c.n = v.get<int>();
      else if (key == "alpha1") c.alpha1 = v.get<double>();
      else if (key == "alpha2") c.alpha2 = v.get<double>();
      else if (key == "beta") c.beta = v.get<double>();
      else if (key == "trials") c.trials = v.get<int>();
      else if (key == "base_seed") c.base_seed = v.get<std::uint64_t>();
      else if (key == "assignment") c.assignment = parse_assignment(v.get<std::string>());
      else if (key == "threads") c.threads = v.get<int>();
      else if (key == "sdp") c.sdp = parse_sdp_kind(v.get<std::string>());
      else if (key == "method") c.method = parse_method(v.get<std::string>());
      else if (key == "tol_feas") c.tol_feas = v.get<double>();
      else if (key == "tol_psd") c.tol_psd = v.get<double>();
      else if (key == "max_iter") c.max_iter = v.get<int>();
      else if (key == "ipm_tol") c.ipm_tol = v.get<double>();
      else if (key == "delta") c.delta = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      else if (key == "epsilon") c.epsilon = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      else if (key == "lambda_magnitudes") c.lambda_magnitudes = v.get<int>();
      else if (key == "cert_tol") c.cert_tol = v.get<double>();
      else if (key == "symmetric_weights") c.symmetric_weights = v.get<bool>();
      else throw_invalid("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw_invalid(std::string("bad config value: ") + e.what());
  }
  validate(c);
  return c;
}

double Frequency::standard_error() const {
  if (trials == 0) return 0;
  const double p = value();
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = static_cast<long long>(values.size());
  if (values.empty()) return s;
  double acc = 0;
  for (double v : values) acc += v;
  s.mean = acc / static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  if (values.size() > 1)
    s.standard_error = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                       std::sqrt(static_cast<double>(values.size()));
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  return s;
}

Json to_json(const Frequency& f) {
  Json j;
  j["count"] = f.count;
  j["trials"] = f.trials;
  j["frequency"] = f.value();
  j["standard_error"] = f.standard_error();
  return j;
}

Json to_json(const Summary& s) {
  Json j;
  j["count"] = s.count;
  j["mean"] = s.mean;
  j["standard_error"] = s.standard_error;
  j["min"] = s.min;
  j["max"] = s.max;
  return j;
}

Json ExperimentResult::to_json() const {
  Json j;
  j["config"] = sbmlab::to_json(config);
  j["seed_rule"] = kSeedRule;
  j["trials"] = trials;
  j["aggregates"] = aggregates;
  return j;
}

Json to_json(const ITEvaluation& e) {
  Json j;
  j["value"] = e.value;
  j["argmax_t"] = e.argmax_t;
  return j;
}

Json to_json(const CloudPoint& p) {
  Json j;
  j["x"] = p.x;
  j["y"] = p.y;
  j["exponent"] = p.exponent;
  return j;
}

Json to_json(const WitnessPair& w) {
  Json j;
  j["p1"] = to_json(w.p1);
  j["p2"] = to_json(w.p2);
  j["slope"] = std::isinf(w.slope) ? Json("inf") : Json(w.slope);
  j["gap"] = w.gap;
  j["delta"] = w.delta;
  j["epsilon"] = w.epsilon;
  return j;
}

Json to_json(const SwapScan& s) {
  Json j;
  j["improving"] = s.improving();
  j["best_delta"] = s.best_delta;
  j["best_i"] = s.best_i;
  j["best_j"] = s.best_j;
  j["improving_pairs"] = s.improving_pairs;
  return j;
}

Json to_json(const EventReport& r) {
  Json j;
  j["n"] = r.n;
  j["delta"] = r.delta;
  j["epsilon"] = r.epsilon;
  j["f_count"] = r.f_count;
  j["g_count"] = r.g_count;
  j["any_f"] = r.any_f();
  j["any_g"] = r.any_g();
  j["f_and_g"] = r.any_f() && r.any_g();
  j["e_pairs"] = r.e_pairs;
  j["any_e"] = r.any_e();
  j["profile_e"] = r.profile_e;
  j["fg_pairs"] = r.fg_pairs;
  j["fg_not_e"] = r.fg_not_e;
  j["degenerate"] = r.degenerate;
  j["anchor"] = r.anchor;
  j["t1_max_internal"] = r.t1_max_internal;
  j["t2_max_internal"] = r.t2_max_internal;
  j["likely"] = r.likely;
  j["fbar_count"] = r.fbar_count;
  j["gbar_count"] = r.gbar_count;
  j["any_fbar"] = r.fbar_count > 0;
  j["any_gbar"] = r.gbar_count > 0;
  j["containment_violations"] = r.containment_violations;
  j["delta_prime"] = r.delta_prime;
  j["epsilon_prime"] = r.epsilon_prime;
  j["reverse_checked"] = r.reverse_checked;
  j["reverse_violations"] = r.reverse_violations;
  return j;
}

Json to_json(const CertificateReport& r) {
  Json j;
  j["lambda"] = r.lambda;
  j["eta"] = r.eta;
  j["h_nonneg"] = r.h_nonneg;
  j["h_worst"] = r.h_worst;
  j["b_nonneg"] = r.b_nonneg;
  j["b_worst"] = r.b_worst;
  j["kernel_residual"] = r.kernel_residual;
  j["lambda1"] = r.lambda1;
  j["lambda2"] = r.lambda2;
  j["kernel_cosine"] = r.kernel_cosine;
  j["symmetry_error"] = r.symmetry_error;
  j["slackness_diag"] = r.slackness_diag;
  j["slackness_offdiag"] = r.slackness_offdiag;
  j["valid"] = r.valid;
  return j;
}

Json to_json(const FailureStats& s) {
  Json j;
  j["k_star"] = s.k_star;
  j["b_sum"] = s.b_sum;
  j["b_sum_term"] = s.b_sum_term;
  j["min_diff"] = s.min_diff;
  j["statistic"] = s.statistic;
  j["tau"] = s.tau;
  return j;
}

Json to_json(const TruthComparison& c) {
  Json j;
  j["target_objective"] = c.target_objective;
  j["sdp_objective"] = c.sdp_objective;
  j["gap"] = c.gap;
  j["relative_distance"] = c.relative_distance;
  return j;
}

Json to_json(const SdpSolution& s, bool include_matrix) {
  Json j;
  j["status"] = status_name(s.status);
  j["method"] = method_name(s.method);
  j["iterations"] = s.iterations;
  j["objective"] = s.objective_value;
  Json r;
  r["primal"] = s.residuals.primal;
  r["dual"] = s.residuals.dual;
  r["constraint"] = s.residuals.constraint;
  r["min_eigenvalue"] = s.residuals.min_eigenvalue;
  j["residuals"] = r;
  if (s.method == SolverMethod::InteriorPoint) {
    j["dual_objective"] = s.dual_objective;
    j["duality_gap"] = s.duality_gap;
  } else {
    j["final_rho"] = s.final_rho;
  }
  if (include_matrix) j["matrix"] = matrix_json(s.matrix);
  return j;
}

ExperimentResult run_swap_failure(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult res{cfg, {}, {}};
  res.trials = parallel_trials(cfg.trials, cfg.threads, [&](int k) {
    const auto seed = trial_seed(cfg.base_seed, k);
    const auto g = trial_graph(cfg, seed);
    Json j = trial_header(k, seed);
    const auto scan = scan_swaps(g, g.truth());
    j.update(to_json(scan));
    return j;
  });
  res.aggregates["improving"] = to_json(tally(res.trials, "improving"));
  res.aggregates["best_delta"] = to_json(summarize(column(res.trials, "best_delta")));
  return res;
}

ExperimentResult run_sdp_gap(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = cfg.params();
  const SolverOptions opt = cfg.solver_options();
  const double slack = 10 * effective_tol_feas(opt, cfg.n);
  ExperimentResult res{cfg, {}, {}};
  res.trials = parallel_trials(cfg.trials, cfg.threads, [&](int k) {
    const auto seed = trial_seed(cfg.base_seed, k);
    const auto g = trial_graph(cfg, seed);
    Json j = trial_header(k, seed);
    double a = 1, b = -1;
    SdpProblem p;
    if (cfg.sdp == SdpKind::Sym) {
      p = build_sym_sdp(g);
    } else {
      const auto w = mle_weights(params);
      a = w.a;
      b = w.b;
      p = build_asym_sdp(g, w);
    }
    const auto sol = solve(p, opt);
    j["solution"] = to_json(sol, false);
    j["converged"] = sol.status == SolveStatus::Converged;
    const auto gain = planted_swap_gain(g, a, b);
    j["max_swap_delta"] = gain.best;
    j["improving_swap"] = gain.best > 0;
    const auto sigma_hat = round_top_eigenvector(sol.matrix);
    j["hwx_score"] = hwx_score(g, sigma_hat);
    try {
      const auto cmp = compare_with_truth(sol, p, planted_matrix(g.truth(), a, b));
      j.update(to_json(cmp));
      j["exact"] = cmp.relative_distance <= 1e-3;
      j["positive_gap"] = cmp.gap > slack;
      j["swap_bound_holds"] = cmp.gap >= gain.best - slack;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Precondition) throw;
      j["comparison_error"] = e.what();
      j["exact"] = nullptr;
      j["positive_gap"] = nullptr;
      j["swap_bound_holds"] = nullptr;
    }
    return j;
  });
  Json& a = res.aggregates;
  a["gap_slack"] = slack;
  a["converged"] = to_json(tally(res.trials, "converged"));
  a["exact"] = to_json(tally(res.trials, "exact"));
  a["positive_gap"] = to_json(tally(res.trials, "positive_gap"));
  a["swap_bound_holds"] = to_json(tally(res.trials, "swap_bound_holds"));
  a["improving_swap"] = to_json(tally(res.trials, "improving_swap"));
  a["gap"] = to_json(summarize(column(res.trials, "gap")));
  a["relative_distance"] = to_json(summarize(column(res.trials, "relative_distance")));
  return res;
}

ExperimentResult run_genie_error(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = cfg.params();
  ExperimentResult res{cfg, {}, {}};
  res.trials = parallel_trials(cfg.trials, cfg.threads, [&](int k) {
    const auto seed = trial_seed(cfg.base_seed, k);
    const auto g = trial_graph(cfg, seed);
    Json j = trial_header(k, seed);
    const auto& sigma = g.truth();
    int asym_errors = 0, sym_errors = 0;
    for (int u = 0; u < g.n(); ++u) {
      long long raw1 = 0, raw2 = 0;
      auto row = g.row(u);
      for (int v = 0; v < g.n(); ++v)
        if (row[static_cast<std::size_t>(v)]) ++(sigma[v] > 0 ? raw1 : raw2);
      if (genie_asym(raw1, raw2, params) != sigma[u]) ++asym_errors;
      if (genie_sym(degree_profile(g, u)) != sigma[u]) ++sym_errors;
    }
    j["asym_errors"] = asym_errors;
    j["sym_errors"] = sym_errors;
    j["asym_exact"] = asym_errors == 0;
    j["sym_exact"] = sym_errors == 0;
    return j;
  });
  res.aggregates["it"] = it_value(Rates::of(params)).value;
  res.aggregates["asym_exact"] = to_json(tally(res.trials, "asym_exact"));
  res.aggregates["sym_exact"] = to_json(tally(res.trials, "sym_exact"));
  res.aggregates["asym_errors"] = to_json(summarize(column(res.trials, "asym_errors")));
  res.aggregates["sym_errors"] = to_json(summarize(column(res.trials, "sym_errors")));
  return res;
}

ExperimentResult run_certificate_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = cfg.params();
  const CertificateWeights w =
      cfg.symmetric_weights ? CertificateWeights{1, -1} : CertificateWeights::of(mle_weights(params));
  const auto model = ExpectationModel::of(params);
  ExperimentResult res{cfg, {}, {}};
  res.trials = parallel_trials(cfg.trials, cfg.threads, [&](int k) {
    const auto seed = trial_seed(cfg.base_seed, k);
    const auto g = trial_graph(cfg, seed);
    Json j = trial_header(k, seed);
    const auto grid = default_lambda_grid(g, cfg.lambda_magnitudes);
    const auto sweep = lambda_sweep(g, w, model, grid, cfg.cert_tol, 1);
    int valid_points = 0;
    for (const auto& r : sweep.all) valid_points += r.valid ? 1 : 0;
    j["best"] = to_json(sweep.best);
    j["valid"] = sweep.best.valid;
    j["invalid"] = !sweep.best.valid;
    j["valid_grid_points"] = valid_points;
    j["grid_points"] = static_cast<int>(grid.size());
    const auto fs = failure_witness_stats(g, w);
    j["failure"] = to_json(fs);
    j["statistic"] = fs.statistic;
    j["statistic_per_log_n"] = fs.statistic / params.log_n();
    j["tau"] = fs.tau;
    return j;
  });
  Json& a = res.aggregates;
  a["weights"] = {{"a", w.a}, {"b", w.b}};
  a["it"] = it_value(Rates::of(params)).value;
  a["it_distance"] = std::abs(it_value(Rates::of(params)).value - 1);
  a["witness"] = find_witness(Rates::of(params)).has_value();
  a["valid"] = to_json(tally(res.trials, "valid"));
  a["invalid"] = to_json(tally(res.trials, "invalid"));
  a["statistic"] = to_json(summarize(column(res.trials, "statistic")));
  a["statistic_per_log_n"] = to_json(summarize(column(res.trials, "statistic_per_log_n")));
  a["tau"] = to_json(summarize(column(res.trials, "tau")));
  return res;
}

std::pair<double, double> event_levels(const ExperimentConfig& cfg) {
  if (cfg.delta && cfg.epsilon) return {*cfg.delta, *cfg.epsilon};
  const auto w = find_witness(Rates{cfg.alpha1, cfg.alpha2, cfg.beta});
  if (!w)
    throw Error(ErrorCode::Precondition,
                "no witness pair at these parameters; supply delta and epsilon");
  return {w->delta, w->epsilon};
}

ExperimentResult run_event_frequencies(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto [delta, epsilon] = event_levels(cfg);
  ExperimentResult res{cfg, {}, {}};
  res.trials = parallel_trials(cfg.trials, cfg.threads, [&](int k) {
    const auto seed = trial_seed(cfg.base_seed, k);
    const auto g = trial_graph(cfg, seed);
    Json j = trial_header(k, seed);
    j.update(to_json(event_scan(g, delta, epsilon)));
    return j;
  });
  Json& a = res.aggregates;
  a["delta"] = delta;
  a["epsilon"] = epsilon;
  for (const char* key : {"likely", "any_f", "any_g", "f_and_g", "any_fbar", "any_gbar", "any_e",
                          "profile_e", "degenerate"})
    a[key] = to_json(tally(res.trials, key));
  long long containment = 0, fg_not_e = 0, checked = 0, reverse = 0;
  for (const auto& t : res.trials) {
    containment += t["containment_violations"].get<long long>();
    fg_not_e += t["fg_not_e"].get<long long>();
    checked += t["reverse_checked"].get<long long>();
    reverse += t["reverse_violations"].get<long long>();
  }
  a["containment_violations"] = containment;
  a["fg_not_e"] = fg_not_e;
  a["reverse_checked"] = checked;
  a["reverse_violations"] = reverse;
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::SwapFailure:
      return run_swap_failure(cfg);
    case ExperimentKind::SdpGap:
      return run_sdp_gap(cfg);
    case ExperimentKind::GenieError:
      return run_genie_error(cfg);
    case ExperimentKind::CertificateSweep:
      return run_certificate_sweep(cfg);
    case ExperimentKind::EventFrequencies:
      return run_event_frequencies(cfg);
  }
  throw_invalid("unknown experiment kind");
}

void write_text_file(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) {
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create directory for " + path + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

std::string write_experiment(const ExperimentResult& r, const std::string& out_dir) {
  const std::string stem = (std::filesystem::path(out_dir) / kind_name(r.config.kind)).string();
  const std::string result_path = stem + ".json";
  const std::string manifest_path = stem + ".manifest.json";
  write_text_file(result_path, r.to_json().dump(2) + "\n");
  Json m;
  m["tool"] = "sbmlab";
  m["version"] = kVersion;
  m["kind"] = kind_name(r.config.kind);
  m["config"] = to_json(r.config);
  m["seed_rule"] = kSeedRule;
  m["seeds"] = Json::array();
  for (const auto& t : r.trials) m["seeds"].push_back(t["seed"]);
  m["files"] = {{"result", std::filesystem::path(result_path).filename().string()}};
  m["rerun"] = "sbmlab experiment --json " + std::filesystem::path(manifest_path).filename().string();
  write_text_file(manifest_path, m.dump(2) + "\n");
  return result_path;
}

CouplingCheck monotone_coupling_check(const ModelParams& upper, const ModelParams& lower,
                                      int trials, std::uint64_t base_seed) {
  require(trials >= 1, "trials must be at least 1");
  require(upper.n() == lower.n(), "coupled models must share n");
  CouplingCheck out;
  out.trials = trials;
  const int n = upper.n();
  for (int k = 0; k < trials; ++k) {
    const auto seed = trial_seed(base_seed, k);
    const auto [g, g_low] = sample_coupled({upper, seed, Assignment::FirstHalf}, lower);
    const auto& sigma = g.truth();

    std::vector<Eigen::MatrixXd> ys;
    Eigen::MatrixXd planted = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (sigma[u] > 0 && sigma[v] > 0) planted(u, v) = 1;
    ys.push_back(planted);
    ys.push_back(Eigen::MatrixXd::Ones(n, n));
    auto rng = make_engine(seed ^ 0x9e3779b97f4a7c15ULL);
    Eigen::MatrixXd gm(n, 3);
    for (int u = 0; u < n; ++u)
      for (int c = 0; c < 3; ++c) gm(u, c) = uniform01(rng);
    ys.push_back(gm * gm.transpose());

    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (g_low(u, v) > g(u, v)) ++out.subgraph_violations;
    for (const auto& y : ys) {
      double hi = 0, lo = 0;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          hi += g(u, v) * y(u, v);
          lo += g_low(u, v) * y(u, v);
        }
      ++out.comparisons;
      if (lo > hi) ++out.violations;
    }
  }
  return out;
}

}  // namespace sbmlab
