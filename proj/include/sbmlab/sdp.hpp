/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sbmlab/core.hpp"
#include "sbmlab/linalg.hpp"
#include "sbmlab/mle.hpp"

namespace sbmlab {

enum class DiagonalKind { Equality, UpperBound };

/// maximize <objective, X> subject to X PSD and the structured family below.
struct SdpProblem {
  Eigen::MatrixXd objective;
  DiagonalKind diagonal = DiagonalKind::Equality;
  double diagonal_value = 1;             // X_ii = value or X_ii <= value
  std::optional<double> entry_lower;     // X_ij >= value for all i, j
  std::optional<double> trace;           // <I, X> = value
  std::optional<double> total;           // <J, X> = value

  int n() const { return static_cast<int>(objective.rows()); }
};

/// Throws InvalidInput on a non-square or non-symmetric objective or non-finite constants.
void validate(const SdpProblem& p);

/// Y PSD, Y_ii = 1, <J, Y> = 0.
SdpProblem build_sym_sdp(const LabeledGraph& g);
/// X PSD, X_ii <= a^2, X_ij >= ab, <I, X> = (n/2)(a^2 + b^2), <J, X> = (n^2/4)(a + b)^2.
/// Needs a > 0 > b. When b^2 > a^2 the planted x* x*^T violates X_jj <= a^2.
SdpProblem build_asym_sdp(const LabeledGraph& g, const MleWeights& w);

/// Largest violation over all constraint families (PSD excluded), per entry:
/// entrywise families by absolute value, the trace residual divided by n and
/// the all-ones residual divided by n^2.
double constraint_violation(const SdpProblem& p, const Eigen::MatrixXd& x);

/// Frobenius-nearest symmetric matrix satisfying every non-PSD constraint.
/// Exact: each block reduces to a monotone shift-and-clip root. Returns
/// nullopt when that set is empty.
std::optional<Eigen::MatrixXd> project_constraints(const SdpProblem& p, const Eigen::MatrixXd& x);

enum class SolveStatus { Converged, IterLimit, Infeasible };
const char* status_name(SolveStatus s);

enum class SolverMethod {
  /// Interior point when the problem has diagonal equalities and no entrywise bounds, else splitting.
  Auto,
  Splitting,
  InteriorPoint
};
const char* method_name(SolverMethod m);

struct SolverOptions {
  SolverMethod method = SolverMethod::Auto;
  double tol_feas = 0;  // 0 selects 1e-6 n
  double tol_psd = 1e-8;
  int max_iter = 50000;
  double relaxation = 1.6;
  double rho = 1.0;
  bool adaptive_rho = true;
  int rho_interval = 50;
  /// Anderson acceleration memory; 0 gives the plain splitting iteration.
  int anderson_memory = 10;
  /// An accelerated step is rejected when its residual exceeds this multiple
  /// of the residual at the last plain step.
  double safeguard = 2.0;
  /// Relative primal, dual and duality-gap tolerance of the interior point method.
  double ipm_tol = 1e-9;
  int ipm_max_iter = 200;
  linalg::EigenMethod eigen = linalg::EigenMethod::Tridiagonal;
  /// Called every `progress_every` iterations when set.
  std::function<void(int, double, double, double)> progress;  // (iter, primal, dual, rho)
  int progress_every = 100;
};

double effective_tol_feas(const SolverOptions& opt, int n);

/// Residual norms are root-mean-square per entry (Frobenius norm / n).
struct SdpResiduals {
  double primal = 0;      // ||X - Z||_F / n
  double dual = 0;        // rho ||Z - Z_prev||_F / n
  double constraint = 0;  // constraint_violation of the returned matrix
  double min_eigenvalue = 0;
};

struct SdpSolution {
  Eigen::MatrixXd matrix;
  double objective_value = 0;
  SolveStatus status = SolveStatus::IterLimit;
  SdpResiduals residuals;
  int iterations = 0;
  double final_rho = 0;  // splitting only
  SolverMethod method = SolverMethod::Splitting;
  /// Interior point only: b^T y of the last dual iterate and <C, X> - b^T y.
  double dual_objective = 0;
  double duality_gap = 0;
};

/// Dispatches on opt.method.
SdpSolution solve(const SdpProblem& p, const SolverOptions& opt = {});

bool interior_point_applicable(const SdpProblem& p);

/// Primal-dual path following (HKM direction, Mehrotra corrector). Needs
/// diagonal equalities and no entrywise bound; a trace constraint must agree
/// with the diagonal. Converged when relative primal and dual residuals and
/// the relative duality gap are below ipm_tol.
SdpSolution solve_interior_point(const SdpProblem& p, const SolverOptions& opt = {});

/// Over-relaxed ADMM between the PSD cone and the constraint set,
///   X <- Pi_psd(Z - U + C / rho);  Xh <- r X + (1 - r) Z
///   Z <- Pi_omega(Xh + U);         U <- U + Xh - Z,
/// run as a fixed-point iteration with Anderson acceleration.
/// Converged when ||X - Z||_F / n, ||dZ||_F / n and the constraint violation
/// of X are all below tol_feas. Returns X, which is PSD up to eigensolver roundoff.
SdpSolution solve_splitting(const SdpProblem& p, const SolverOptions& opt = {});

struct TruthComparison {
  double target_objective = 0;
  double sdp_objective = 0;
  double gap = 0;               // sdp - target
  double relative_distance = 0; // ||X - target||_F / ||target||_F
};

/// Throws Precondition if sol is not Converged or target violates the
/// constraints by more than `feas_tol` (0 selects 1e-9 max(1, |constants|)).
TruthComparison compare_with_truth(const SdpSolution& sol, const SdpProblem& p,
                                   const Eigen::MatrixXd& target, double feas_tol = 0);

/// sigma sigma^T.
Eigen::MatrixXd planted_matrix(const Labeling& sigma);
/// x x^T with x_i = a on C1 and b on C2.
Eigen::MatrixXd planted_matrix(const Labeling& sigma, double a, double b);

/// Signs of the top eigenvector, ties to +1. The global sign is arbitrary.
std::vector<int> round_top_eigenvector(const Eigen::MatrixXd& x);

struct SwapGain {
  double best = 0;
  int best_i = -1;
  int best_j = -1;
};

/// Largest change of x^T A x over swaps of one C1 and one C2 vertex of the
/// planted vector x (a on C1, b on C2):
///   2 (b - a) [(A x)_i - (A x)_j] - 2 (a - b)^2 A_ij.
/// With a = 1, b = -1 this is the z-objective swap delta.
SwapGain planted_swap_gain(const LabeledGraph& g, double a, double b);

/// min_i sum_l A_il s_i s_l.
double hwx_score(const LabeledGraph& g, const std::vector<int>& s);

}  // namespace sbmlab
