/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "sbmlab/certificate.hpp"
#include "sbmlab/error.hpp"
#include "sbmlab/events.hpp"
#include "sbmlab/sbm.hpp"

using namespace sbmlab;

TEST_CASE("noiseless two cliques: valid exactly above 1 - 2/n") {
  for (int n : {8, 12, 20}) {
    const auto g = testing::two_cliques(n);
    const ExpectationModel exact{1, 1, 0};
    const double edge = 1 - 2.0 / n;
    for (double lambda : {-1.0, 0.0, edge - 0.05, edge + 0.05, 1.0, 3.0}) {
      const auto c = construct_certificate(g, {1, -1}, exact, lambda);
      CHECK(c.eta == doctest::Approx(0).scale(1));
      const auto r = check_certificate(c, 1, -1);
      CHECK(r.valid == (lambda > edge));
      // Spectrum of S: 0 on x*, lambda n - n + 2 on 1, and 1 elsewhere.
      std::vector<double> eig{0.0, lambda * n - n + 2, 1.0};
      std::sort(eig.begin(), eig.end());
      CHECK(r.lambda1 == doctest::Approx(eig[0]).scale(1));
      CHECK(r.lambda2 == doctest::Approx(eig[1]).scale(1));
      CHECK(r.kernel_residual < 1e-10);
    }
  }
}

TEST_CASE("symmetric levels make h independent of eta and lambda") {
  const auto p = ModelParams::create(300, 25, 25, 4);
  const auto g = sample({p, 3, Assignment::FirstHalf});
  const auto diff = degree_differences(g);
  const auto c2 = g.truth().members(-1);
  double mean = 0;
  for (int j : c2) mean += diff[static_cast<std::size_t>(j)];
  mean /= static_cast<double>(c2.size());
  for (double lambda : {-2.0, 0.0, 0.7}) {
    const auto c = construct_certificate(g, {1, -1}, ExpectationModel::of(p), lambda);
    for (int i : g.truth().members(1))
      REQUIRE(c.h(i) == doctest::Approx(diff[static_cast<std::size_t>(i)] + mean));
  }
}

TEST_CASE("construction annihilates the planted vector") {
  const auto p = ModelParams::create(200, 26.3, 12.5, 10);
  const auto g = sample({p, 9, Assignment::RandomPermutation});
  const auto w = CertificateWeights::of(mle_weights(p));
  for (double lambda : {-0.1, 0.0, 0.05}) {
    const auto c = construct_certificate(g, w, ExpectationModel::of(p), lambda);
    const auto r = check_certificate(c, w.a, w.b);
    CHECK(r.kernel_residual < 1e-9);
    CHECK(r.symmetry_error < 1e-12);
    CHECK(r.slackness_diag < 1e-9);
    CHECK(r.slackness_offdiag < 1e-9);
    // B is a stripe: zero inside communities.
    for (int u : c.c1)
      for (int v : c.c1) REQUIRE(c.B(u, v) == 0);
    CHECK(c.eta == doctest::Approx(c.norm_a_dev + c.norm_b_dev));
    CHECK(c.norm_a_dev == doctest::Approx(linalg::spectral_norm(g.adjacency_matrix() - c.expected_a)));
  }
}

TEST_CASE("certificate input validation") {
  const auto g = testing::two_cliques(8);
  CHECK_THROWS_AS(construct_certificate(g, {-1, -2}, {0.5, 0.5, 0.1}, 0), Error);
  CHECK_THROWS_AS(construct_certificate(g, {1, -1}, {1.5, 0.5, 0.1}, 0), Error);
  CHECK_THROWS_AS(construct_certificate(g, {1, -1}, {0.5, 0.5, 0.1}, NAN), Error);
  CHECK_THROWS_AS(stripe_matrix(g.truth(), Eigen::VectorXd::Zero(3)), Error);
}

TEST_CASE("default lambda grid") {
  const auto g = testing::two_cliques(10);
  const auto grid = default_lambda_grid(g);
  REQUIRE(grid.size() == 41);
  CHECK(grid[20] == 0);
  const double scale = linalg::spectral_norm(g.adjacency_matrix()) / 10;
  CHECK(grid[21] == doctest::Approx(scale / 100));
  CHECK(grid[40] == doctest::Approx(scale * 100));
  for (std::size_t k = 0; k < 20; ++k) CHECK(grid[k] == doctest::Approx(-grid[40 - k]));
  for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] > grid[k - 1]);
}

TEST_CASE("report ordering") {
  CertificateReport a, b;
  a.valid = true;
  a.lambda2 = -1;
  b.lambda2 = 5;
  CHECK(better_report(a, b));
  a.valid = false;
  CHECK(better_report(b, a));
  a.lambda2 = b.lambda2;
  a.b_worst = 1;
  b.b_worst = 0;
  CHECK(better_report(a, b));
}

TEST_CASE("sweep is independent of the thread count") {
  const auto p = ModelParams::create(200, 26.3, 12.5, 10);
  const auto g = sample({p, 4, Assignment::FirstHalf});
  const auto w = CertificateWeights::of(mle_weights(p));
  const auto grid = default_lambda_grid(g, 5);
  const auto one = lambda_sweep(g, w, ExpectationModel::of(p), grid, 1e-7, 1);
  const auto three = lambda_sweep(g, w, ExpectationModel::of(p), grid, 1e-7, 3);
  REQUIRE(one.all.size() == grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(one.all[k].lambda == grid[k]);
    CHECK(one.all[k].lambda2 == three.all[k].lambda2);
    CHECK(one.all[k].valid == three.all[k].valid);
  }
  CHECK(one.best.lambda == three.best.lambda);
  for (const auto& r : one.all) CHECK_FALSE(better_report(r, one.best));
}

TEST_CASE("failure statistics from first principles") {
  const auto p = ModelParams::create(200, 26.3, 12.5, 10);
  const auto g = sample({p, 12, Assignment::FirstHalf});
  const CertificateWeights w{1.4, -0.9};
  const auto s = failure_witness_stats(g, w);
  Eigen::VectorXd x(200);
  for (int u = 0; u < 200; ++u) x(u) = g.truth()[u] > 0 ? w.a : w.b;
  const Eigen::VectorXd ax = g.adjacency_matrix() * x;
  double kmax = -1e300, sum = 0, min1 = 1e300;
  for (int j : g.truth().members(-1)) {
    kmax = std::max(kmax, ax(j));
    sum += ax(j);
  }
  for (int i : g.truth().members(1)) min1 = std::min(min1, ax(i));
  const double bsum = 2.0 / (w.a * 200) * (100 * kmax - sum);
  CHECK(s.k_star == doctest::Approx(kmax));
  CHECK(s.b_sum == doctest::Approx(bsum));
  CHECK(s.statistic == doctest::Approx(w.b * bsum + min1 - kmax));
  CHECK(s.tau == doctest::Approx((kmax - sum / 100) / std::log(200.0)));
  CHECK(s.b_sum >= 0);
}
