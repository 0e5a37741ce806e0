/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sbmlab/core.hpp"
#include "sbmlab/linalg.hpp"
#include "sbmlab/mle.hpp"

namespace sbmlab {

/// Block edge probabilities used for E[A] (zero diagonal) and E[(A x*)_j].
struct ExpectationModel {
  double p1 = 0;
  double p2 = 0;
  double q = 0;

  static ExpectationModel of(const ModelParams& p) { return {p.p1(), p.p2(), p.q()}; }
};

/// Levels of the planted vector: x*_i = a on C1, b on C2.
struct CertificateWeights {
  double a = 1;
  double b = -1;

  static CertificateWeights of(const MleWeights& w) { return {w.a, w.b}; }
};

/// Dual candidate for the asymmetric SDP at the planted solution.
struct Certificate {
  double eta = 0;
  double lambda = 0;
  double norm_a_dev = 0;  // ||A - E[A]||_2
  double norm_b_dev = 0;  // ||B - E[B]||_2
  Eigen::VectorXd x;      // x*
  Eigen::VectorXd ax;     // A x*
  Eigen::VectorXd h;      // diagonal of H, zero on C2
  /// b_j for the members of C2 in increasing index order.
  Eigen::VectorXd b_stripe;
  std::vector<int> c1;
  std::vector<int> c2;
  Eigen::MatrixXd B;
  Eigen::MatrixXd S;  // H - B - A + eta I + lambda J
  Eigen::MatrixXd expected_a;
  Eigen::MatrixXd expected_b;
};

/// h_i = (1/a)[(B x*)_i + (A x*)_i - eta a - lambda 1^T x*] on C1,
/// b_j = (2/(a n))[eta b + lambda 1^T x* - (A x*)_j] on C2,
/// B_ij = b_j for (i in C1, j in C2) and symmetric, zero inside communities,
/// eta = ||A - E[A]|| + ||B - E[B]||. B - E[B] does not involve eta or lambda,
/// so its norm is taken first. Requires a > 0 and a > b.
Certificate construct_certificate(const LabeledGraph& g, CertificateWeights w,
                                  const ExpectationModel& model, double lambda,
                                  linalg::EigenMethod method = linalg::EigenMethod::Tridiagonal);

/// B with the stripe structure from b_stripe.
Eigen::MatrixXd stripe_matrix(const Labeling& sigma, const Eigen::VectorXd& b_stripe);

struct CertificateReport {
  double lambda = 0;
  double eta = 0;
  bool h_nonneg = false;
  double h_worst = 0;  // min_i h_i
  bool b_nonneg = false;
  double b_worst = 0;  // min_j b_j
  double kernel_residual = 0;  // ||S x*|| / ||x*||
  double lambda1 = 0;
  double lambda2 = 0;
  /// |cos| between the bottom eigenvector of S and x*.
  double kernel_cosine = 0;
  double symmetry_error = 0;
  double slackness_diag = 0;     // max_i |h_i (X*_ii - a^2)|
  double slackness_offdiag = 0;  // max_ij |B_ij (X*_ij - ab)|
  bool valid = false;
};

/// valid iff h >= -tol, b >= -tol, kernel_residual <= tol and lambda2 > tol.
CertificateReport check_certificate(const Certificate& c, double a, double b, double tol = 1e-7,
                                    linalg::EigenMethod method = linalg::EigenMethod::Tridiagonal);

/// The default grid: 0 plus 20 magnitudes log-spaced over [scale/100, 100 scale]
/// with both signs, scale = ||A||_2 / n.
std::vector<double> default_lambda_grid(const LabeledGraph& g, int magnitudes = 20);

struct LambdaSweep {
  CertificateReport best;
  std::vector<CertificateReport> all;  // one per grid point, grid order
};

/// Lexicographic order: validity, then lambda2, then min b_j.
bool better_report(const CertificateReport& x, const CertificateReport& y);

/// construct + check at every grid point. Ties keep the earliest grid point.
LambdaSweep lambda_sweep(const LabeledGraph& g, CertificateWeights w,
                         const ExpectationModel& model, const std::vector<double>& grid,
                         double tol = 1e-7, int threads = 1);

struct FailureStats {
  /// K* = max_j (A x*)_j over C2: the least value of eta b + lambda 1^T x*
  /// keeping every b_j >= 0. Any nonnegative stripe has sum b_l >= the one at K*.
  double k_star = 0;
  double b_sum = 0;       // sum over C2 of b_l at K*
  double b_sum_term = 0;  // b * b_sum
  double min_diff = 0;    // min over i in C1, j in C2 of (A x*)_i - (A x*)_j
  double statistic = 0;   // b_sum_term + min_diff; negative rules out every certificate
  double tau = 0;         // (max_j (A x*)_j - mean_l (A x*)_l) / log n over C2
};

FailureStats failure_witness_stats(const LabeledGraph& g, CertificateWeights w);

}  // namespace sbmlab
