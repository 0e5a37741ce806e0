/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "sbmlab/error.hpp"
#include "sbmlab/sdp.hpp"

namespace sbmlab {

namespace {

// Every constraint is <u_k u_k^T, W> = b_k with W of order r; the columns of
// `u` are the u_k. X = V W V^T maps back to the original space.
struct RankOneForm {
  Eigen::MatrixXd u;       // r x m
  Eigen::VectorXd b;       // m
  Eigen::MatrixXd basis;   // n x r
  Eigen::MatrixXd c;       // r x r
  int diag_count = 0;      // leading constraints coming from the diagonal
};

// Orthonormal basis of the complement of the all-ones vector, from the
// Householder reflection taking 1 / sqrt(n) to e_1.
Eigen::MatrixXd ones_complement(int n) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1 / std::sqrt(static_cast<double>(n)));
  w(0) -= 1;
  const double norm = w.norm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  if (norm > 0) {
    w /= norm;
    h -= 2 * w * w.transpose();
  }
  return h.rightCols(n - 1);
}

RankOneForm reduce(const SdpProblem& p) {
  const int n = p.n();
  RankOneForm f;
  f.diag_count = n;
  // <J, X> = 0 with X PSD forces X 1 = 0, so the feasible set has no
  // interior point; restrict to the face X = V W V^T with V^T 1 = 0.
  const bool on_face = p.total && *p.total == 0;
  if (on_face) {
    f.basis = ones_complement(n);
    f.u = f.basis.transpose();
    f.b = Eigen::VectorXd::Constant(n, p.diagonal_value);
  } else {
    f.basis = Eigen::MatrixXd::Identity(n, n);
    const int m = n + (p.total ? 1 : 0);
    f.u = Eigen::MatrixXd::Zero(n, m);
    f.u.leftCols(n).setIdentity();
    f.b = Eigen::VectorXd::Constant(m, p.diagonal_value);
    if (p.total) {
      f.u.col(n).setOnes();
      f.b(n) = *p.total;
    }
  }
  f.c = f.basis.transpose() * p.objective * f.basis;
  return f;
}

Eigen::VectorXd apply_a(const RankOneForm& f, const Eigen::MatrixXd& w) {
  return (f.u.transpose() * w * f.u).diagonal();
}

Eigen::MatrixXd apply_at(const RankOneForm& f, const Eigen::VectorXd& y) {
  return f.u * y.asDiagonal() * f.u.transpose();
}

// Largest a with x + a dx PSD; +inf when unbounded.
double max_step(const Eigen::LLT<Eigen::MatrixXd>& chol, const Eigen::MatrixXd& dx,
                linalg::EigenMethod method) {
  const auto& l = chol.matrixL();
  Eigen::MatrixXd w = l.solve(dx);
  w = l.solve(w.transpose()).eval();
  const double lmin = linalg::eigvalsh(linalg::symmetrize(w), method)(0);
  return lmin < 0 ? -1 / lmin : std::numeric_limits<double>::infinity();
}

}  // namespace

bool interior_point_applicable(const SdpProblem& p) {
  return p.diagonal == DiagonalKind::Equality && !p.entry_lower;
}

// Infeasible primal-dual path following with the HKM direction and a
// Mehrotra predictor-corrector step, for
//   max <C, W>  s.t. <u_k u_k^T, W> = b_k, W PSD
//   min b^T y   s.t. sum_k y_k u_k u_k^T - S = C, S PSD.
SdpSolution solve_interior_point(const SdpProblem& p, const SolverOptions& opt) {
  validate(p);
  require(interior_point_applicable(p),
          "interior point method needs diagonal equalities and no entrywise bounds");
  require(opt.ipm_tol > 0 && opt.ipm_max_iter >= 1, "interior point options must be positive");
  const int n = p.n();
  const double tol = effective_tol_feas(opt, n);
  SdpSolution sol;
  sol.method = SolverMethod::InteriorPoint;

  const bool trace_conflict =
      p.trace && std::abs(*p.trace - n * p.diagonal_value) > 1e-12 * std::max(1.0, std::abs(*p.trace));
  // 0 <= <J, X> <= n tr X for X PSD.
  const bool total_out_of_range =
      p.total && (*p.total < 0 || *p.total > n * n * p.diagonal_value * (1 + 1e-12));
  if (trace_conflict || total_out_of_range || p.diagonal_value <= 0 || n < 2) {
    sol.status = SolveStatus::Infeasible;
    sol.matrix = Eigen::MatrixXd::Zero(n, n);
    sol.residuals.constraint = constraint_violation(p, sol.matrix);
    return sol;
  }

  const RankOneForm f = reduce(p);
  const int r = static_cast<int>(f.u.rows());
  const int m = static_cast<int>(f.u.cols());
  const Eigen::MatrixXd& c = f.c;
  const double c_norm = std::max(1.0, c.norm());
  const double b_norm = std::max(1.0, f.b.norm());

  const Eigen::MatrixXd uu = f.u.transpose() * f.u;
  Eigen::LDLT<Eigen::MatrixXd> aat(uu.cwiseProduct(uu));

  // W0 = s I with diag(V W0 V^T) = d; S0 = shift I - C.
  const double row_norm = f.basis.row(0).squaredNorm();
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(r, r) * (p.diagonal_value / row_norm);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  const double shift = std::max(0.0, linalg::eigvalsh(c, opt.eigen)(r - 1)) + c_norm / r + 1;
  y.head(f.diag_count).setConstant(shift / row_norm);
  Eigen::MatrixXd s = apply_at(f, y) - c;

  const double tau = 0.98;
  double best_score = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_x = x;
  int stalls = 0;
  bool breakdown = false;
  int it = 0;
  for (it = 1; it <= opt.ipm_max_iter; ++it) {
    const Eigen::VectorXd rp = f.b - apply_a(f, x);
    const Eigen::MatrixXd rd = c - (apply_at(f, y) - s);
    const double mu = x.cwiseProduct(s).sum() / r;
    const double pobj = c.cwiseProduct(x).sum();
    const double dobj = f.b.dot(y);
    const double rel_gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
    const double rel_p = rp.norm() / b_norm;
    const double rel_d = rd.norm() / c_norm;
    const double score = std::max({rel_gap, rel_p, rel_d});
    if (score < best_score) {
      best_score = score;
      best_x = x;
      sol.residuals.primal = rp.norm() / n;
      sol.residuals.dual = rd.norm() / n;
      sol.duality_gap = pobj - dobj;
      sol.dual_objective = dobj;
    }
    if (opt.progress && it % opt.progress_every == 0) opt.progress(it, rel_p, rel_d, rel_gap);
    if (score <= opt.ipm_tol) {
      sol.status = SolveStatus::Converged;
      break;
    }

    Eigen::LLT<Eigen::MatrixXd> chol_s(s);
    Eigen::LLT<Eigen::MatrixXd> chol_x(x);
    if (chol_s.info() != Eigen::Success || chol_x.info() != Eigen::Success) {
      breakdown = true;
      break;
    }
    const Eigen::MatrixXd s_inv = chol_s.solve(Eigen::MatrixXd::Identity(r, r));

    // Schur complement M_kl = (u_k^T W u_l)(u_l^T S^-1 u_k).
    const Eigen::MatrixXd schur =
        linalg::symmetrize((f.u.transpose() * x * f.u).cwiseProduct(f.u.transpose() * s_inv * f.u));
    Eigen::LDLT<Eigen::MatrixXd> schur_f(schur);
    if (schur_f.info() != Eigen::Success) {
      breakdown = true;
      break;
    }

    const Eigen::MatrixXd x_rd_sinv = x * rd * s_inv;
    auto direction = [&](double target_mu, const Eigen::MatrixXd* corr, Eigen::VectorXd& dy,
                         Eigen::MatrixXd& ds, Eigen::MatrixXd& dx) {
      Eigen::MatrixXd g = target_mu * s_inv - x + x_rd_sinv;
      if (corr) g -= *corr;
      dy = schur_f.solve(apply_a(f, g) - rp);
      ds = apply_at(f, dy) - rd;
      dx = linalg::symmetrize(g - x_rd_sinv - x * ds * s_inv);
      // Least-norm correction restoring A(dX) = rp against cancellation.
      dx += apply_at(f, aat.solve(rp - apply_a(f, dx)));
    };

    Eigen::VectorXd dy;
    Eigen::MatrixXd ds, dx;
    direction(0.0, nullptr, dy, ds, dx);
    const double ap_aff = std::min(1.0, max_step(chol_x, dx, opt.eigen));
    const double ad_aff = std::min(1.0, max_step(chol_s, ds, opt.eigen));
    const double mu_aff = (x + ap_aff * dx).cwiseProduct(s + ad_aff * ds).sum() / r;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3), 0.0, 1.0);
    const Eigen::MatrixXd corr = dx * ds * s_inv;
    direction(sigma * mu, &corr, dy, ds, dx);
    const double ap = std::min(1.0, tau * max_step(chol_x, dx, opt.eigen));
    const double ad = std::min(1.0, tau * max_step(chol_s, ds, opt.eigen));
    x = linalg::symmetrize(x + ap * dx);
    y += ad * dy;
    s = linalg::symmetrize(s + ad * ds);

    // Vanishing steps: an empty feasible set or exhausted precision.
    if (std::max(ap, ad) < 1e-8) {
      if (++stalls >= 5) {
        breakdown = true;
        break;
      }
    } else {
      stalls = 0;
    }
  }
  // Precision ran out near the optimum: accept the best iterate at reduced accuracy.
  if (breakdown && best_score <= 100 * opt.ipm_tol) sol.status = SolveStatus::Converged;
  sol.iterations = std::min(it, opt.ipm_max_iter);
  sol.matrix = linalg::symmetrize(f.basis * best_x * f.basis.transpose());
  sol.objective_value = p.objective.cwiseProduct(sol.matrix).sum();
  sol.residuals.constraint = constraint_violation(p, sol.matrix);
  sol.residuals.min_eigenvalue = linalg::eigvalsh(sol.matrix, opt.eigen)(0);
  if (sol.status == SolveStatus::Converged &&
      (sol.residuals.constraint > tol || sol.residuals.min_eigenvalue < -opt.tol_psd))
    sol.status = SolveStatus::IterLimit;
  return sol;
}

}  // namespace sbmlab
