/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <random>

#include "sbmlab/linalg.hpp"

using namespace sbmlab::linalg;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
  return a;
}

// Characteristic polynomial coefficients c_k of det(t I - A) = sum_k c_k t^(n-k),
// by Faddeev-LeVerrier.
std::vector<double> charpoly(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  c[0] = 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(k - 1)] * Eigen::MatrixXd::Identity(n, n);
    c[static_cast<std::size_t>(k)] = -(a * m).trace() / k;
  }
  return c;
}

// Elementary symmetric polynomials with alternating sign, matching charpoly.
std::vector<double> from_roots(const Eigen::VectorXd& r) {
  std::vector<double> c{1.0};
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r(k) * c[i];
    }
    c = next;
  }
  return c;
}

}  // namespace

TEST_CASE("eigenvalues are roots of the characteristic polynomial for n <= 4") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n)
    for (int rep = 0; rep < 50; ++rep) {
      const auto a = random_symmetric(n, rng);
      const auto want = charpoly(a);
      for (auto method : {EigenMethod::Tridiagonal, EigenMethod::Jacobi}) {
        const auto got = from_roots(eigvalsh(a, method));
        for (std::size_t k = 0; k < want.size(); ++k)
          REQUIRE(got[k] == doctest::Approx(want[k]).epsilon(1e-9).scale(1.0));
      }
    }
}

TEST_CASE("closed form 2x2 spectrum") {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const auto e = eigh(a);
  CHECK(e.values(0) == doctest::Approx(1));
  CHECK(e.values(1) == doctest::Approx(3));
  CHECK(std::abs(e.vectors(0, 1)) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("tridiagonal and Jacobi decompositions agree") {
  std::mt19937_64 rng(5);
  for (int n : {5, 17, 40}) {
    const auto a = random_symmetric(n, rng);
    const auto t = eigh(a, EigenMethod::Tridiagonal);
    const auto j = eigh(a, EigenMethod::Jacobi);
    CHECK((t.values - j.values).cwiseAbs().maxCoeff() < 1e-10);
    for (const auto* e : {&t, &j}) {
      const Eigen::MatrixXd recon = e->vectors * e->values.asDiagonal() * e->vectors.transpose();
      CHECK((recon - a).norm() < 1e-10 * a.norm());
      CHECK((e->vectors.transpose() * e->vectors - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-10);
    }
  }
}

TEST_CASE("Jacobi handles the zero matrix and repeated eigenvalues") {
  const auto z = jacobi_eigh(Eigen::MatrixXd::Zero(4, 4));
  CHECK(z.values.cwiseAbs().maxCoeff() == 0);
  const auto e = jacobi_eigh(Eigen::MatrixXd::Ones(4, 4));
  CHECK(e.values(0) == doctest::Approx(0).scale(1));
  CHECK(e.values(2) == doctest::Approx(0).scale(1));
  CHECK(e.values(3) == doctest::Approx(4));
}

TEST_CASE("spectral norm is the largest absolute eigenvalue") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a.diagonal() << -5, 1, 2;
  CHECK(spectral_norm(a) == doctest::Approx(5));
  CHECK(spectral_norm(a, EigenMethod::Jacobi) == doctest::Approx(5));
}

TEST_CASE("PSD projection satisfies the projection optimality conditions") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_symmetric(12, rng);
    const auto p = project_psd(a);
    const Eigen::MatrixXd r = a - p;
    // P >= 0, A - P <= 0 and <P, A - P> = 0 characterize the projection.
    CHECK(eigvalsh(p).minCoeff() > -1e-10);
    CHECK(eigvalsh(r).maxCoeff() < 1e-10);
    CHECK(std::abs((p.array() * r.array()).sum()) < 1e-9);
    CHECK((project_psd(p) - p).norm() < 1e-10);
  }
}
