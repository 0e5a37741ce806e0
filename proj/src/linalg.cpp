/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sbmlab/error.hpp"

namespace sbmlab::linalg {

namespace {

SymmetricEigen tridiagonal_eigh(const Eigen::MatrixXd& a, bool want_vectors) {
  SymmetricEigen out;
  if (a.rows() == 0) {
    out.values.resize(0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      a, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NotConverged, "symmetric eigensolver did not converge");
  out.values = es.eigenvalues();
  if (want_vectors) out.vectors = es.eigenvectors();
  return out;
}

}  // namespace

SymmetricEigen jacobi_eigh(const Eigen::MatrixXd& input, double off_tol, int max_sweeps) {
  require(input.rows() == input.cols(), "eigendecomposition needs a square matrix");
  const Eigen::Index n = input.rows();
  // Work on the symmetric matrix defined by the lower triangle.
  Eigen::MatrixXd a = input.triangularView<Eigen::Lower>();
  a.triangularView<Eigen::StrictlyUpper>() = a.transpose().triangularView<Eigen::StrictlyUpper>();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = a.norm();
  const double target = off_tol * (scale > 0 ? scale : 1.0);
  auto off_norm = [&] {
    double s = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = j + 1; i < n; ++i) s += 2 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0) continue;
        // Rotation angle zeroing a(p, q) (Golub & Van Loan, sym.schur2).
        const double tau = (a(q, q) - a(p, p)) / (2 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm() > target)
    throw Error(ErrorCode::NotConverged, "Jacobi eigensolver hit the sweep limit");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

SymmetricEigen eigh(const Eigen::MatrixXd& a, EigenMethod method) {
  require(a.rows() == a.cols(), "eigendecomposition needs a square matrix");
  if (method == EigenMethod::Jacobi) return jacobi_eigh(a);
  return tridiagonal_eigh(a, true);
}

Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& a, EigenMethod method) {
  require(a.rows() == a.cols(), "eigendecomposition needs a square matrix");
  if (method == EigenMethod::Jacobi) return jacobi_eigh(a).values;
  return tridiagonal_eigh(a, false).values;
}

double spectral_norm(const Eigen::MatrixXd& a, EigenMethod method) {
  if (a.size() == 0) return 0;
  const Eigen::VectorXd w = eigvalsh(a, method);
  return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& a, EigenMethod method) {
  const SymmetricEigen es = eigh(a, method);
  const Eigen::Index n = a.rows();
  Eigen::Index first_pos = 0;
  while (first_pos < n && es.values(first_pos) <= 0) ++first_pos;
  const Eigen::Index k = n - first_pos;
  if (k == 0) return Eigen::MatrixXd::Zero(n, n);
  // X = W W^T with W = V_+ diag(sqrt(lambda_+)).
  Eigen::MatrixXd w = es.vectors.rightCols(k);
  for (Eigen::Index c = 0; c < k; ++c) w.col(c) *= std::sqrt(es.values(first_pos + c));
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  x.selfadjointView<Eigen::Lower>().rankUpdate(w);
  return x.selfadjointView<Eigen::Lower>();
}

}  // namespace sbmlab::linalg
