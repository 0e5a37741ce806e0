/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "sbmlab/error.hpp"

namespace sbmlab {

void validate(const SdpProblem& p) {
  require(p.objective.rows() >= 1 && p.objective.rows() == p.objective.cols(),
          "objective must be square and nonempty");
  require(p.objective.allFinite(), "objective must be finite");
  require((p.objective - p.objective.transpose()).cwiseAbs().maxCoeff() <= 1e-12 *
              std::max(1.0, p.objective.cwiseAbs().maxCoeff()),
          "objective must be symmetric");
  require(std::isfinite(p.diagonal_value), "diagonal constant must be finite");
  if (p.entry_lower) require(std::isfinite(*p.entry_lower), "entry bound must be finite");
  if (p.trace) require(std::isfinite(*p.trace), "trace constant must be finite");
  if (p.total) require(std::isfinite(*p.total), "total constant must be finite");
}

SdpProblem build_sym_sdp(const LabeledGraph& g) {
  SdpProblem p;
  p.objective = g.adjacency_matrix();
  p.diagonal = DiagonalKind::Equality;
  p.diagonal_value = 1;
  p.total = 0.0;
  return p;
}

SdpProblem build_asym_sdp(const LabeledGraph& g, const MleWeights& w) {
  require(w.a > 0 && w.b < 0, "asymmetric SDP needs a > 0 > b");
  const double n = g.n();
  SdpProblem p;
  p.objective = g.adjacency_matrix();
  p.diagonal = DiagonalKind::UpperBound;
  p.diagonal_value = w.a * w.a;
  p.entry_lower = w.a * w.b;
  p.trace = 0.5 * n * (w.a * w.a + w.b * w.b);
  p.total = 0.25 * n * n * (w.a + w.b) * (w.a + w.b);
  return p;
}

double constraint_violation(const SdpProblem& p, const Eigen::MatrixXd& x) {
  const int n = p.n();
  require(x.rows() == n && x.cols() == n, "matrix dimension does not match problem");
  double v = (x - x.transpose()).cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    if (p.diagonal == DiagonalKind::Equality)
      v = std::max(v, std::abs(x(i, i) - p.diagonal_value));
    else
      v = std::max(v, x(i, i) - p.diagonal_value);
  }
  if (p.entry_lower) v = std::max(v, *p.entry_lower - x.minCoeff());
  if (p.trace) v = std::max(v, std::abs(x.trace() - *p.trace) / n);
  if (p.total) v = std::max(v, std::abs(x.sum() - *p.total) / (static_cast<double>(n) * n));
  return v;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::IterLimit:
      return "IterLimit";
    case SolveStatus::Infeasible:
      return "Infeasible";
  }
  return "?";
}

double effective_tol_feas(const SolverOptions& opt, int n) {
  return opt.tol_feas > 0 ? opt.tol_feas : 1e-6 * n;
}

namespace {

// Type-II Anderson acceleration on the fixed-point map w -> T(w).
class Anderson {
 public:
  explicit Anderson(int memory) : memory_(memory) {}

  void reset() {
    dg_.clear();
    df_.clear();
    has_prev_ = false;
  }

  // Given w, T(w) and g = T(w) - w, returns the next iterate.
  Eigen::MatrixXd step(const Eigen::MatrixXd& tw, const Eigen::MatrixXd& g) {
    if (memory_ <= 0) return tw;
    if (has_prev_) {
      dg_.push_back(g - prev_g_);
      df_.push_back(tw - prev_tw_);
      if (static_cast<int>(dg_.size()) > memory_) {
        dg_.erase(dg_.begin());
        df_.erase(df_.begin());
      }
    }
    prev_g_ = g;
    prev_tw_ = tw;
    has_prev_ = true;
    const int m = static_cast<int>(dg_.size());
    if (m == 0) return tw;
    Eigen::MatrixXd gram(m, m);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
      rhs(i) = dg_[static_cast<std::size_t>(i)].cwiseProduct(g).sum();
      for (int j = 0; j <= i; ++j)
        gram(i, j) = gram(j, i) =
            dg_[static_cast<std::size_t>(i)].cwiseProduct(dg_[static_cast<std::size_t>(j)]).sum();
    }
    gram.diagonal().array() += 1e-10 * std::max(gram.trace(), 1e-300);
    const Eigen::VectorXd gamma = gram.ldlt().solve(rhs);
    if (!gamma.allFinite()) {
      reset();
      return tw;
    }
    Eigen::MatrixXd out = tw;
    for (int i = 0; i < m; ++i) out -= gamma(i) * df_[static_cast<std::size_t>(i)];
    return out;
  }

 private:
  int memory_;
  std::vector<Eigen::MatrixXd> dg_, df_;
  Eigen::MatrixXd prev_g_, prev_tw_;
  bool has_prev_ = false;
};

}  // namespace

// Douglas-Rachford splitting written on w = Z + U (scaled ADMM variables):
//   Z = Pi_omega(w),  X = Pi_psd(2Z - w + C / rho),  T(w) = w + r (X - Z).
// Anderson extrapolation is applied to T; a step whose residual grows past
// the safeguard is replaced by the plain step from the previous point.
SdpSolution solve_splitting(const SdpProblem& p, const SolverOptions& opt) {
  validate(p);
  require(opt.tol_feas >= 0 && opt.tol_psd > 0, "tolerances must be positive");
  require(opt.max_iter >= 1, "max_iter must be positive");
  require(opt.relaxation > 0 && opt.relaxation < 2, "relaxation must lie in (0, 2)");
  require(opt.rho > 0, "rho must be positive");
  require(opt.anderson_memory >= 0, "anderson memory must be nonnegative");
  const int n = p.n();
  const double tol = effective_tol_feas(opt, n);

  SdpSolution sol;
  sol.method = SolverMethod::Splitting;
  auto z0 = project_constraints(p, Eigen::MatrixXd::Zero(n, n));
  if (!z0) {
    sol.status = SolveStatus::Infeasible;
    sol.matrix = Eigen::MatrixXd::Zero(n, n);
    sol.residuals.constraint = constraint_violation(p, sol.matrix);
    return sol;
  }
  const double alpha = opt.relaxation;
  double rho = opt.rho;
  Eigen::MatrixXd w = *z0;
  Eigen::MatrixXd z_prev = *z0;
  Eigen::MatrixXd x = *z0;
  Eigen::MatrixXd last_plain_tw;  // T at the last point reached by a plain step
  double last_plain_res = -1;
  bool last_was_accelerated = false;
  Anderson accel(opt.anderson_memory);

  double stall_ref = -1;
  int it = 0;
  for (it = 1; it <= opt.max_iter; ++it) {
    auto zo = project_constraints(p, w);
    if (!zo) throw Error(ErrorCode::NotConverged, "constraint projection failed mid-solve");
    const Eigen::MatrixXd& z = *zo;
    x = linalg::project_psd(2 * z - w + p.objective / rho, opt.eigen);
    const Eigen::MatrixXd g = alpha * (x - z);
    const double primal = (x - z).norm() / n;
    const double change = (z - z_prev).norm() / n;
    const double dual = rho * change;
    sol.residuals.primal = primal;
    sol.residuals.dual = dual;
    if (opt.progress && it % opt.progress_every == 0) opt.progress(it, primal, dual, rho);

    if (primal <= tol && change <= tol) {
      sol.residuals.constraint = constraint_violation(p, x);
      if (sol.residuals.constraint <= tol) {
        sol.status = SolveStatus::Converged;
        break;
      }
    }

    if (last_was_accelerated && primal > opt.safeguard * last_plain_res) {
      // Reject the extrapolated point and continue from the plain step.
      accel.reset();
      w = last_plain_tw;
      last_was_accelerated = false;
      continue;
    }

    // Empty intersection: the sets stay apart while the iterates stop moving.
    if (it % 100 == 0) {
      if (stall_ref > 0 && primal > 1e3 * tol && std::abs(primal - stall_ref) <= 1e-4 * primal &&
          change <= 1e-6 * std::max(1.0, z.norm() / n)) {
        sol.status = SolveStatus::Infeasible;
        break;
      }
      stall_ref = primal;
    }
    z_prev = z;

    if (opt.adaptive_rho && it % opt.rho_interval == 0 &&
        (primal > 10 * dual || dual > 10 * primal)) {
      const double k = primal > dual ? 2.0 : 0.5;
      rho *= k;
      // U scales by 1/k while Z is unchanged.
      w = z + (w - z) / k;
      accel.reset();
      last_was_accelerated = false;
      continue;
    }

    Eigen::MatrixXd tw = w + g;
    last_plain_tw = tw;
    last_plain_res = primal;
    w = accel.step(tw, g);
    last_was_accelerated = opt.anderson_memory > 0;
  }
  sol.iterations = std::min(it, opt.max_iter);
  sol.matrix = std::move(x);
  sol.objective_value = p.objective.cwiseProduct(sol.matrix).sum();
  sol.residuals.constraint = constraint_violation(p, sol.matrix);
  sol.residuals.min_eigenvalue = linalg::eigvalsh(sol.matrix, opt.eigen)(0);
  sol.final_rho = rho;
  if (sol.status == SolveStatus::Converged && sol.residuals.min_eigenvalue < -opt.tol_psd)
    sol.status = SolveStatus::IterLimit;
  return sol;
}

SdpSolution solve(const SdpProblem& p, const SolverOptions& opt) {
  switch (opt.method) {
    case SolverMethod::Splitting:
      return solve_splitting(p, opt);
    case SolverMethod::InteriorPoint:
      return solve_interior_point(p, opt);
    case SolverMethod::Auto:
      break;
  }
  return interior_point_applicable(p) ? solve_interior_point(p, opt) : solve_splitting(p, opt);
}

const char* method_name(SolverMethod m) {
  switch (m) {
    case SolverMethod::Auto:
      return "auto";
    case SolverMethod::Splitting:
      return "splitting";
    case SolverMethod::InteriorPoint:
      return "interior-point";
  }
  return "unknown";
}

TruthComparison compare_with_truth(const SdpSolution& sol, const SdpProblem& p,
                                   const Eigen::MatrixXd& target, double feas_tol) {
  if (sol.status != SolveStatus::Converged)
    throw Error(ErrorCode::Precondition, "comparison needs a converged solution");
  require(target.rows() == p.n() && target.cols() == p.n(), "target dimension mismatch");
  if (feas_tol <= 0) {
    double scale = std::max(1.0, std::abs(p.diagonal_value));
    if (p.entry_lower) scale = std::max(scale, std::abs(*p.entry_lower));
    feas_tol = 1e-9 * scale * p.n();
  }
  const double viol = constraint_violation(p, target);
  if (viol > feas_tol)
    throw Error(ErrorCode::Precondition,
                "target is not feasible for the problem (violation " + std::to_string(viol) + ")");
  TruthComparison c;
  c.target_objective = p.objective.cwiseProduct(target).sum();
  c.sdp_objective = sol.objective_value;
  c.gap = c.sdp_objective - c.target_objective;
  const double tn = target.norm();
  c.relative_distance = (sol.matrix - target).norm() / (tn > 0 ? tn : 1.0);
  return c;
}

Eigen::MatrixXd planted_matrix(const Labeling& sigma) { return planted_matrix(sigma, 1.0, -1.0); }

Eigen::MatrixXd planted_matrix(const Labeling& sigma, double a, double b) {
  Eigen::VectorXd x(sigma.size());
  for (int i = 0; i < sigma.size(); ++i) x(i) = sigma[i] > 0 ? a : b;
  return x * x.transpose();
}

std::vector<int> round_top_eigenvector(const Eigen::MatrixXd& x) {
  const auto eig = linalg::eigh(x);
  const Eigen::VectorXd v = eig.vectors.col(eig.values.size() - 1);
  std::vector<int> s(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) s[static_cast<std::size_t>(i)] = v(i) >= 0 ? 1 : -1;
  return s;
}

SwapGain planted_swap_gain(const LabeledGraph& g, double a, double b) {
  require(std::isfinite(a) && std::isfinite(b), "levels must be finite");
  const auto& sigma = g.truth();
  const int n = g.n();
  Eigen::VectorXd x(n);
  for (int u = 0; u < n; ++u) x(u) = sigma[u] > 0 ? a : b;
  const Eigen::VectorXd ax = g.adjacency_matrix() * x;
  const auto c1 = sigma.members(1);
  const auto c2 = sigma.members(-1);
  SwapGain out;
  bool first = true;
  for (int i : c1) {
    for (int j : c2) {
      const double d = 2 * (b - a) * (ax(i) - ax(j)) - 2 * (a - b) * (a - b) * g(i, j);
      if (first || d > out.best) {
        out = {d, i, j};
        first = false;
      }
    }
  }
  return out;
}

double hwx_score(const LabeledGraph& g, const std::vector<int>& s) {
  require(static_cast<int>(s.size()) == g.n(), "labeling length does not match graph");
  double best = 0;
  for (int i = 0; i < g.n(); ++i) {
    auto r = g.row(i);
    long long acc = 0;
    for (int l = 0; l < g.n(); ++l) acc += r[static_cast<std::size_t>(l)] * s[static_cast<std::size_t>(l)];
    const double v = static_cast<double>(acc * s[static_cast<std::size_t>(i)]);
    best = i == 0 ? v : std::min(best, v);
  }
  return best;
}

}  // namespace sbmlab
