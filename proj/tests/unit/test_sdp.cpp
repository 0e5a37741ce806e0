/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "sbmlab/error.hpp"
#include "sbmlab/sbm.hpp"
#include "sbmlab/sdp.hpp"

using namespace sbmlab;

namespace {

MleWeights unit_levels() {
  MleWeights w;
  w.psi1 = w.psi2 = 1;
  w.a = 1;
  w.b = -1;
  return w;
}

// Cyclic Dykstra over the four constraint families of p (full-matrix Frobenius norm).
Eigen::MatrixXd dykstra(const SdpProblem& p, const Eigen::MatrixXd& x0, int cycles) {
  const int n = p.n();
  const double nn = static_cast<double>(n) * n;
  std::vector<std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>> proj;
  proj.push_back([&](const Eigen::MatrixXd& x) {
    Eigen::MatrixXd y = x;
    for (int i = 0; i < n; ++i)
      y(i, i) = p.diagonal == DiagonalKind::Equality ? p.diagonal_value
                                                     : std::min(y(i, i), p.diagonal_value);
    return y;
  });
  if (p.entry_lower)
    proj.push_back([&](const Eigen::MatrixXd& x) {
      return Eigen::MatrixXd(x.cwiseMax(*p.entry_lower));
    });
  if (p.trace)
    proj.push_back([&](const Eigen::MatrixXd& x) {
      Eigen::MatrixXd y = x;
      y.diagonal().array() += (*p.trace - x.trace()) / n;
      return y;
    });
  if (p.total)
    proj.push_back([&](const Eigen::MatrixXd& x) {
      return Eigen::MatrixXd(x.array() + (*p.total - x.sum()) / nn);
    });
  std::vector<Eigen::MatrixXd> inc(proj.size(), Eigen::MatrixXd::Zero(n, n));
  Eigen::MatrixXd x = x0;
  for (int c = 0; c < cycles; ++c)
    for (std::size_t k = 0; k < proj.size(); ++k) {
      const Eigen::MatrixXd y = proj[k](x + inc[k]);
      inc[k] = x + inc[k] - y;
      x = y;
    }
  return x;
}

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0, scale);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
  return a;
}

long long brute_max_z(const LabeledGraph& g) {
  long long best = std::numeric_limits<long long>::min();
  testing::for_each_balanced(g.n(), [&](const Labeling& s) { best = std::max(best, testing::z_direct(g, s)); });
  return best;
}

}  // namespace

TEST_CASE("sym SDP structure") {
  const auto g = testing::two_cliques(6);
  const auto p = build_sym_sdp(g);
  CHECK(p.diagonal == DiagonalKind::Equality);
  CHECK(p.diagonal_value == 1);
  CHECK_FALSE(p.entry_lower.has_value());
  CHECK(p.total.value() == 0);
  CHECK(constraint_violation(p, planted_matrix(g.truth())) == 0);
  CHECK(interior_point_applicable(p));
  CHECK_FALSE(interior_point_applicable(build_asym_sdp(g, unit_levels())));
}

TEST_CASE("asym SDP structure") {
  const auto g = testing::two_cliques(8);
  MleWeights w;
  w.a = 2;
  w.b = -1;
  const auto p = build_asym_sdp(g, w);
  CHECK(p.diagonal == DiagonalKind::UpperBound);
  CHECK(p.diagonal_value == 4);
  CHECK(*p.entry_lower == -2);
  CHECK(*p.trace == doctest::Approx(4 * 5));
  CHECK(*p.total == doctest::Approx(16));
  CHECK(constraint_violation(p, planted_matrix(g.truth(), 2, -1)) < 1e-12);
  w.b = 1;
  CHECK_THROWS_AS(build_asym_sdp(g, w), Error);
}

TEST_CASE("constraint projection agrees with Dykstra") {
  std::mt19937_64 rng(17);
  const auto g = testing::two_cliques(6);
  MleWeights w;
  w.a = 1.3;
  w.b = -0.8;
  const auto asym = build_asym_sdp(g, w);
  const auto sym = build_sym_sdp(g);
  for (const auto* p : {&asym, &sym})
    for (int rep = 0; rep < 10; ++rep) {
      const auto x = random_symmetric(6, rng, 2.0);
      const auto fast = project_constraints(*p, x);
      REQUIRE(fast.has_value());
      const auto slow = dykstra(*p, x, 20000);
      CHECK((*fast - slow).cwiseAbs().maxCoeff() < 1e-6);
      CHECK(constraint_violation(*p, *fast) < 1e-9);
    }
}

TEST_CASE("constraint projection reports an empty set") {
  SdpProblem p;
  p.objective = Eigen::MatrixXd::Zero(4, 4);
  p.diagonal_value = 1;
  p.trace = 3;  // conflicts with X_ii = 1
  CHECK_FALSE(project_constraints(p, Eigen::MatrixXd::Zero(4, 4)).has_value());
  const auto sol = solve_interior_point(p);
  CHECK(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("sym SDP is exact on two cliques") {
  for (int n : {4, 6, 8, 10, 12}) {
    const auto g = testing::two_cliques(n);
    const auto p = build_sym_sdp(g);
    const long long h = n / 2;
    const double want = 2.0 * 2.0 * (h * (h - 1) / 2);
    CHECK(brute_max_z(g) == static_cast<long long>(want));
    for (auto m : {SolverMethod::InteriorPoint, SolverMethod::Splitting}) {
      SolverOptions opt;
      opt.method = m;
      const auto sol = solve(p, opt);
      REQUIRE(sol.status == SolveStatus::Converged);
      CHECK(sol.method == m);
      const auto cmp = compare_with_truth(sol, p, planted_matrix(g.truth()));
      CHECK(cmp.relative_distance <= 1e-3);
      CHECK(sol.objective_value == doctest::Approx(want).epsilon(1e-5));
    }
  }
}

TEST_CASE("sym SDP relaxes the balanced max z") {
  std::mt19937_64 rng(23);
  for (int n : {8, 10, 12})
    for (int rep = 0; rep < 5; ++rep) {
      const auto g = testing::random_graph(n, 0.5, rng);
      const auto sol = solve(build_sym_sdp(g));
      REQUIRE(sol.status == SolveStatus::Converged);
      const double tol = effective_tol_feas(SolverOptions{}, n);
      CHECK(sol.objective_value >= static_cast<double>(brute_max_z(g)) - tol);
    }
}

TEST_CASE("interior point and splitting agree") {
  const auto params = ModelParams::create(40, 6, 6, 1.5);
  for (int k = 0; k < 3; ++k) {
    const auto g = sample({params, trial_seed(5, k), Assignment::FirstHalf});
    const auto p = build_sym_sdp(g);
    SolverOptions ipm, split;
    ipm.method = SolverMethod::InteriorPoint;
    split.method = SolverMethod::Splitting;
    split.tol_feas = 1e-7;
    const auto a = solve(p, ipm);
    const auto b = solve(p, split);
    REQUIRE(a.status == SolveStatus::Converged);
    REQUIRE(b.status == SolveStatus::Converged);
    CHECK(a.objective_value == doctest::Approx(b.objective_value).epsilon(1e-4));
    CHECK(std::abs(a.duality_gap) <= 1e-6 * std::max(1.0, std::abs(a.objective_value)));
    CHECK(a.residuals.min_eigenvalue > -1e-8);
    CHECK(a.residuals.constraint < 1e-8);
  }
}

TEST_CASE("asym SDP with a = -b is exact on two cliques") {
  for (int n : {6, 8, 10}) {
    const auto g = testing::two_cliques(n);
    const auto p = build_asym_sdp(g, unit_levels());
    const auto sol = solve(p);
    REQUIRE(sol.status == SolveStatus::Converged);
    CHECK(sol.method == SolverMethod::Splitting);
    const auto cmp = compare_with_truth(sol, p, planted_matrix(g.truth(), 1, -1));
    CHECK(cmp.relative_distance <= 1e-3);
    long long best = std::numeric_limits<long long>::min();
    testing::for_each_balanced(n, [&](const Labeling& s) { best = std::max(best, testing::z_direct(g, s)); });
    CHECK(cmp.target_objective == doctest::Approx(static_cast<double>(best)));
  }
}

TEST_CASE("comparison needs a converged solution") {
  const auto g = testing::two_cliques(6);
  const auto p = build_sym_sdp(g);
  SolverOptions opt;
  opt.method = SolverMethod::Splitting;
  opt.max_iter = 1;
  const auto sol = solve(p, opt);
  CHECK(sol.status == SolveStatus::IterLimit);
  try {
    compare_with_truth(sol, p, planted_matrix(g.truth()));
    FAIL("expected Precondition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("planted swap gain matches brute force") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 50; ++rep) {
    const auto g = testing::random_graph(10, 0.4, rng);
    const double a = 1.7, b = -0.6;
    const Eigen::MatrixXd adj = g.adjacency_matrix();
    auto quad = [&](const Labeling& s) {
      Eigen::VectorXd x(10);
      for (int u = 0; u < 10; ++u) x(u) = s[u] > 0 ? a : b;
      return x.dot(adj * x);
    };
    double best = -1e300;
    for (int i : g.truth().members(1))
      for (int j : g.truth().members(-1)) best = std::max(best, quad(g.truth().swapped(i, j)) - quad(g.truth()));
    CHECK(planted_swap_gain(g, a, b).best == doctest::Approx(best));
    CHECK(planted_swap_gain(g, 1, -1).best == doctest::Approx(static_cast<double>(scan_swaps(g, g.truth()).best_delta)));
  }
}

TEST_CASE("rounding recovers the planted labeling") {
  const auto g = testing::two_cliques(8);
  const auto s = round_top_eigenvector(planted_matrix(g.truth()));
  const int sign = s[0];
  for (int u = 0; u < 8; ++u) CHECK(s[static_cast<std::size_t>(u)] * sign == g.truth()[u]);
  std::vector<int> truth(g.truth().values().begin(), g.truth().values().end());
  CHECK(hwx_score(g, truth) == 3);
}
