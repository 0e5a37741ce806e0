/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbmlab/certificate.hpp"
#include "sbmlab/core.hpp"
#include "sbmlab/events.hpp"
#include "sbmlab/sbm.hpp"
#include "sbmlab/sdp.hpp"
#include "sbmlab/threshold.hpp"

namespace sbmlab {

using Json = nlohmann::ordered_json;

enum class ExperimentKind { SwapFailure, SdpGap, GenieError, CertificateSweep, EventFrequencies };
const char* kind_name(ExperimentKind k);
ExperimentKind parse_kind(const std::string& s);

enum class SdpKind { Sym, Asym };
const char* sdp_kind_name(SdpKind k);
SdpKind parse_sdp_kind(const std::string& s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SwapFailure;
  int n = 0;
  double alpha1 = 0;
  double alpha2 = 0;
  double beta = 0;
  int trials = 1;
  /// Trial k uses seed base_seed + k.
  std::uint64_t base_seed = 0;
  Assignment assignment = Assignment::FirstHalf;
  /// 0 uses every hardware thread. Results do not depend on it.
  int threads = 0;

  // SdpGap
  SdpKind sdp = SdpKind::Sym;
  SolverMethod method = SolverMethod::Auto;
  double tol_feas = 0;  // 0 selects 1e-6 n
  double tol_psd = 1e-8;
  int max_iter = 50000;
  double ipm_tol = 1e-9;

  // EventFrequencies: both unset selects the witness split points.
  std::optional<double> delta;
  std::optional<double> epsilon;

  // CertificateSweep
  int lambda_magnitudes = 20;
  double cert_tol = 1e-7;
  /// Certificate levels: MLE weights, or a = 1, b = -1.
  bool symmetric_weights = false;

  ModelParams params() const { return ModelParams::create(n, alpha1, alpha2, beta); }
  SolverOptions solver_options() const;
};

/// Throws InvalidInput on trials < 1 or invalid model parameters.
void validate(const ExperimentConfig& cfg);
Json to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j);

struct Frequency {
  long long count = 0;
  long long trials = 0;
  double value() const { return trials ? static_cast<double>(count) / trials : 0.0; }
  /// sqrt(p (1 - p) / trials).
  double standard_error() const;
};

struct Summary {
  long long count = 0;
  double mean = 0;
  double standard_error = 0;  // sample sd / sqrt(count)
  double min = 0;
  double max = 0;
};
Summary summarize(const std::vector<double>& values);

Json to_json(const Frequency& f);
Json to_json(const Summary& s);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<Json> trials;  // trial index order, each with "trial" and "seed"
  Json aggregates;
  Json to_json() const;
};

/// Runs trials concurrently; each trial writes only its own record.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_swap_failure(const ExperimentConfig& cfg);
ExperimentResult run_sdp_gap(const ExperimentConfig& cfg);
ExperimentResult run_genie_error(const ExperimentConfig& cfg);
ExperimentResult run_certificate_sweep(const ExperimentConfig& cfg);
ExperimentResult run_event_frequencies(const ExperimentConfig& cfg);

/// Picks (delta, epsilon) from the witness pair of cfg's rates. Throws
/// Precondition when no witness exists and the config does not supply them.
std::pair<double, double> event_levels(const ExperimentConfig& cfg);

/// Writes <out_dir>/<kind>.json (result) and <out_dir>/<kind>.manifest.json.
/// Returns the result path. Throws Io with the path on failure.
std::string write_experiment(const ExperimentResult& r, const std::string& out_dir);

struct CouplingCheck {
  int trials = 0;
  long long comparisons = 0;
  long long violations = 0;  // <A', Y> > <A, Y>
  long long subgraph_violations = 0;
};

/// Samples coupled graphs A >= A' (A' drawn with `lower`) and checks
/// <A', Y> <= <A, Y> for fixed entrywise nonnegative Y: the planted PDS
/// indicator 1_{C1} 1_{C1}^T, the all-ones matrix and a random G G^T, G >= 0.
CouplingCheck monotone_coupling_check(const ModelParams& upper, const ModelParams& lower,
                                      int trials, std::uint64_t base_seed);

// JSON views of module reports.
Json to_json(const ITEvaluation& e);
Json to_json(const CloudPoint& p);
Json to_json(const WitnessPair& w);
Json to_json(const SwapScan& s);
Json to_json(const EventReport& r);
Json to_json(const CertificateReport& r);
Json to_json(const FailureStats& s);
Json to_json(const TruthComparison& c);
/// The matrix is included only when asked; it is O(n^2).
Json to_json(const SdpSolution& s, bool include_matrix);

/// Writes figure inputs for figure 1, 2 or 3 into out_dir and returns the
/// manifest path. `resolution` is the boundary point count (1, 2) or the
/// raster size per axis (3).
std::string emit_figure_data(int which, const std::string& out_dir, int resolution);

/// Writes text to path, creating parent directories. Throws Io on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sbmlab
