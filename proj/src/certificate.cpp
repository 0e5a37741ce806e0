/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sbmlab/error.hpp"

namespace sbmlab {

namespace {

// Everything that does not depend on lambda.
struct Base {
  int n = 0;
  double a = 0, b = 0;
  std::vector<int> c1, c2;
  Eigen::MatrixXd adj;
  Eigen::VectorXd x, ax;
  Eigen::MatrixXd expected_a;
  Eigen::VectorXd expected_ax;
  double norm_a_dev = 0;
  double norm_b_dev = 0;
  double eta = 0;
  double ones_x = 0;  // 1^T x*
};

Base make_base(const LabeledGraph& g, CertificateWeights w, const ExpectationModel& m,
               linalg::EigenMethod method) {
  require(std::isfinite(w.a) && std::isfinite(w.b) && w.a > 0 && w.a > w.b,
          "certificate weights need a > 0 and a > b");
  require(m.p1 >= 0 && m.p1 <= 1 && m.p2 >= 0 && m.p2 <= 1 && m.q >= 0 && m.q <= 1,
          "expectation model probabilities must lie in [0, 1]");
  Base s;
  s.n = g.n();
  s.a = w.a;
  s.b = w.b;
  const auto& sigma = g.truth();
  s.c1 = sigma.members(1);
  s.c2 = sigma.members(-1);
  s.adj = g.adjacency_matrix();
  s.x.resize(s.n);
  for (int u = 0; u < s.n; ++u) s.x(u) = sigma[u] > 0 ? w.a : w.b;
  s.ax = s.adj * s.x;
  s.ones_x = s.x.sum();

  s.expected_a.resize(s.n, s.n);
  for (int u = 0; u < s.n; ++u)
    for (int v = 0; v < s.n; ++v)
      s.expected_a(u, v) = u == v ? 0.0 : sigma[u] != sigma[v] ? m.q : sigma[u] > 0 ? m.p1 : m.p2;
  s.expected_ax = s.expected_a * s.x;

  // b_j - E[b_j] = (2/(a n)) (E[(A x*)_j] - (A x*)_j).
  Eigen::VectorXd dev(static_cast<Eigen::Index>(s.c2.size()));
  for (std::size_t k = 0; k < s.c2.size(); ++k) {
    const int j = s.c2[k];
    dev(static_cast<Eigen::Index>(k)) = 2.0 / (w.a * s.n) * (s.expected_ax(j) - s.ax(j));
  }
  s.norm_a_dev = linalg::spectral_norm(s.adj - s.expected_a, method);
  s.norm_b_dev = linalg::spectral_norm(stripe_matrix(sigma, dev), method);
  s.eta = s.norm_a_dev + s.norm_b_dev;
  return s;
}

Eigen::VectorXd stripe_values(const Base& s, double lambda, const Eigen::VectorXd& ax) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(s.c2.size()));
  const double k = s.eta * s.b + lambda * s.ones_x;
  for (std::size_t i = 0; i < s.c2.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = 2.0 / (s.a * s.n) * (k - ax(s.c2[i]));
  return out;
}

Certificate build(const Base& s, const Labeling& sigma, double lambda) {
  Certificate c;
  c.eta = s.eta;
  c.lambda = lambda;
  c.norm_a_dev = s.norm_a_dev;
  c.norm_b_dev = s.norm_b_dev;
  c.x = s.x;
  c.ax = s.ax;
  c.c1 = s.c1;
  c.c2 = s.c2;
  c.expected_a = s.expected_a;

  c.b_stripe = stripe_values(s, lambda, s.ax);
  c.B = stripe_matrix(sigma, c.b_stripe);
  c.expected_b = stripe_matrix(sigma, stripe_values(s, lambda, s.expected_ax));
  const Eigen::VectorXd bx = c.B * s.x;
  c.h = Eigen::VectorXd::Zero(s.n);
  for (int i : s.c1) c.h(i) = (bx(i) + s.ax(i) - s.eta * s.a - lambda * s.ones_x) / s.a;

  c.S = -c.B - s.adj;
  c.S.diagonal() += c.h + Eigen::VectorXd::Constant(s.n, s.eta);
  c.S.array() += lambda;
  return c;
}

}  // namespace

Eigen::MatrixXd stripe_matrix(const Labeling& sigma, const Eigen::VectorXd& b_stripe) {
  const auto c1 = sigma.members(1);
  const auto c2 = sigma.members(-1);
  require(static_cast<std::size_t>(b_stripe.size()) == c2.size(),
          "stripe length must equal the size of C2");
  const int n = sigma.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < c2.size(); ++k) {
    const int j = c2[k];
    for (int i : c1) out(i, j) = out(j, i) = b_stripe(static_cast<Eigen::Index>(k));
  }
  return out;
}

Certificate construct_certificate(const LabeledGraph& g, CertificateWeights w,
                                  const ExpectationModel& model, double lambda,
                                  linalg::EigenMethod method) {
  require(std::isfinite(lambda), "lambda must be finite");
  return build(make_base(g, w, model, method), g.truth(), lambda);
}

CertificateReport check_certificate(const Certificate& c, double a, double b, double tol,
                                    linalg::EigenMethod method) {
  require(tol >= 0, "tolerance must be nonnegative");
  CertificateReport r;
  r.lambda = c.lambda;
  r.eta = c.eta;
  const int n = static_cast<int>(c.x.size());

  r.h_worst = std::numeric_limits<double>::infinity();
  for (int i : c.c1) r.h_worst = std::min(r.h_worst, c.h(i));
  if (c.c1.empty()) r.h_worst = 0;
  r.h_nonneg = r.h_worst >= -tol;
  r.b_worst = c.b_stripe.size() ? c.b_stripe.minCoeff() : 0.0;
  r.b_nonneg = r.b_worst >= -tol;

  const double xn = c.x.norm();
  r.kernel_residual = (c.S * c.x).norm() / (xn > 0 ? xn : 1.0);
  r.symmetry_error = (c.S - c.S.transpose()).cwiseAbs().maxCoeff();

  const auto eig = linalg::eigh(linalg::symmetrize(c.S), method);
  r.lambda1 = eig.values(0);
  r.lambda2 = n > 1 ? eig.values(1) : std::numeric_limits<double>::infinity();
  r.kernel_cosine = xn > 0 ? std::abs(eig.vectors.col(0).dot(c.x)) / xn : 0.0;

  for (int u = 0; u < n; ++u) {
    r.slackness_diag = std::max(r.slackness_diag, std::abs(c.h(u) * (c.x(u) * c.x(u) - a * a)));
    for (int v = 0; v < n; ++v)
      r.slackness_offdiag =
          std::max(r.slackness_offdiag, std::abs(c.B(u, v) * (c.x(u) * c.x(v) - a * b)));
  }
  r.valid = r.h_nonneg && r.b_nonneg && r.kernel_residual <= tol && r.lambda2 > tol;
  return r;
}

std::vector<double> default_lambda_grid(const LabeledGraph& g, int magnitudes) {
  require(magnitudes >= 1, "grid needs at least one magnitude");
  const double norm = linalg::spectral_norm(g.adjacency_matrix());
  const double scale = norm > 0 ? norm / g.n() : 1.0;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * magnitudes + 1));
  std::vector<double> mags;
  for (int k = 0; k < magnitudes; ++k) {
    const double t = magnitudes == 1 ? 0.5 : static_cast<double>(k) / (magnitudes - 1);
    mags.push_back(scale * std::pow(10.0, -2.0 + 4.0 * t));
  }
  for (auto it = mags.rbegin(); it != mags.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  for (double m : mags) grid.push_back(m);
  return grid;
}

bool better_report(const CertificateReport& x, const CertificateReport& y) {
  if (x.valid != y.valid) return x.valid;
  if (x.lambda2 != y.lambda2) return x.lambda2 > y.lambda2;
  return x.b_worst > y.b_worst;
}

LambdaSweep lambda_sweep(const LabeledGraph& g, CertificateWeights w,
                         const ExpectationModel& model, const std::vector<double>& grid,
                         double tol, int threads) {
  require(!grid.empty(), "lambda grid must not be empty");
  for (double l : grid) require(std::isfinite(l), "lambda grid values must be finite");
  const Base base = make_base(g, w, model, linalg::EigenMethod::Tridiagonal);
  LambdaSweep out;
  out.all.resize(grid.size());
  auto work = [&](std::size_t k) {
    out.all[k] = check_certificate(build(base, g.truth(), grid[k]), w.a, w.b, tol);
  };
  const std::size_t workers =
      std::min<std::size_t>(grid.size(), static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < grid.size(); ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < grid.size(); k += workers) work(k);
      });
    for (auto& th : pool) th.join();
  }
  out.best = out.all.front();
  for (const auto& r : out.all)
    if (better_report(r, out.best)) out.best = r;
  return out;
}

FailureStats failure_witness_stats(const LabeledGraph& g, CertificateWeights w) {
  require(std::isfinite(w.a) && std::isfinite(w.b) && w.a > 0 && w.a > w.b,
          "certificate weights need a > 0 and a > b");
  const auto& sigma = g.truth();
  const auto c1 = sigma.members(1);
  const auto c2 = sigma.members(-1);
  const int n = g.n();
  Eigen::VectorXd x(n);
  for (int u = 0; u < n; ++u) x(u) = sigma[u] > 0 ? w.a : w.b;
  const Eigen::VectorXd ax = g.adjacency_matrix() * x;

  FailureStats s;
  double min_c1 = std::numeric_limits<double>::infinity();
  double max_c2 = -std::numeric_limits<double>::infinity();
  double sum_c2 = 0;
  for (int i : c1) min_c1 = std::min(min_c1, ax(i));
  for (int j : c2) {
    max_c2 = std::max(max_c2, ax(j));
    sum_c2 += ax(j);
  }
  const double m2 = static_cast<double>(c2.size());
  s.k_star = max_c2;
  // sum_l (2/(a n)) (K* - (A x*)_l)
  s.b_sum = 2.0 / (w.a * n) * (m2 * s.k_star - sum_c2);
  s.b_sum_term = w.b * s.b_sum;
  s.min_diff = min_c1 - max_c2;
  s.statistic = s.b_sum_term + s.min_diff;
  s.tau = (max_c2 - sum_c2 / m2) / std::log(static_cast<double>(n));
  return s;
}

}  // namespace sbmlab
