/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

namespace sbmlab::linalg {

enum class EigenMethod {
  Tridiagonal,  // Householder tridiagonalization + implicit symmetric QR
  Jacobi,       // cyclic Jacobi rotations, reference implementation
};

/// Eigenvalues in ascending order; column k of `vectors` pairs with values(k).
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Only the lower triangle of `a` is read.
SymmetricEigen eigh(const Eigen::MatrixXd& a, EigenMethod method = EigenMethod::Tridiagonal);
Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& a, EigenMethod method = EigenMethod::Tridiagonal);

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm is at most
/// `off_tol` times the Frobenius norm of the input (absolute when the input is 0).
SymmetricEigen jacobi_eigh(const Eigen::MatrixXd& a, double off_tol = 1e-12,
                           int max_sweeps = 100);

/// Largest absolute eigenvalue of a symmetric matrix.
double spectral_norm(const Eigen::MatrixXd& a, EigenMethod method = EigenMethod::Tridiagonal);

/// Frobenius-nearest positive semidefinite matrix: clamp negative eigenvalues to 0.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& a, EigenMethod method = EigenMethod::Tridiagonal);

inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a) {
  return 0.5 * (a + a.transpose());
}

}  // namespace sbmlab::linalg
