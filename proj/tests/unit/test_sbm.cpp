/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sbmlab/error.hpp"
#include "sbmlab/mle.hpp"
#include "sbmlab/sbm.hpp"

using namespace sbmlab;

TEST_CASE("sampling is a pure function of the seed") {
  const auto p = ModelParams::create(200, 12, 8, 3);
  const auto a = sample({p, 42, Assignment::RandomPermutation});
  const auto b = sample({p, 42, Assignment::RandomPermutation});
  const auto c = sample({p, 43, Assignment::RandomPermutation});
  CHECK(a.edges() == b.edges());
  CHECK(a.truth() == b.truth());
  CHECK(a.edges() != c.edges());
}

TEST_CASE("trial seeds are base plus index, whitened") {
  CHECK(trial_seed(100, 3) == 103);
  auto a = make_engine(103);
  std::mt19937_64 b(splitmix64(103));
  CHECK(a() == b());
}

TEST_CASE("uniform draws lie in [0, 1)") {
  auto rng = make_engine(9);
  double lo = 1, hi = 0, acc = 0;
  for (int k = 0; k < 100000; ++k) {
    const double u = uniform01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    acc += u;
  }
  CHECK(lo >= 0);
  CHECK(hi < 1);
  CHECK(acc / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("block edge frequencies match the model") {
  const auto p = ModelParams::create(400, 30, 15, 6);
  long long e1 = 0, e2 = 0, e12 = 0;
  const int reps = 20;
  for (int k = 0; k < reps; ++k) {
    const auto c = edge_counts(sample({p, trial_seed(1, k), Assignment::FirstHalf}));
    e1 += c.e1;
    e2 += c.e2;
    e12 += c.e12;
  }
  const double h = 200.0 * 199 / 2 * reps, r = 200.0 * 200 * reps;
  // Five binomial standard deviations.
  auto close = [](double count, double trials, double prob) {
    return std::abs(count - trials * prob) <= 5 * std::sqrt(trials * prob * (1 - prob));
  };
  CHECK(close(static_cast<double>(e1), h, p.p1()));
  CHECK(close(static_cast<double>(e2), h, p.p2()));
  CHECK(close(static_cast<double>(e12), r, p.q()));
}

TEST_CASE("random assignment stays balanced") {
  const auto p = ModelParams::create(100, 10, 10, 2);
  for (int k = 0; k < 10; ++k) {
    const auto g = sample({p, static_cast<std::uint64_t>(k), Assignment::RandomPermutation});
    CHECK(g.truth().members(1).size() == 50);
  }
}

TEST_CASE("coupled samples are nested") {
  const auto upper = ModelParams::create(120, 20, 14, 6);
  const auto lower = ModelParams::create(120, 20, 14, 2);
  const auto [g, h] = sample_coupled({upper, 3, Assignment::FirstHalf}, lower);
  long long extra = 0;
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v) {
      REQUIRE(h(u, v) <= g(u, v));
      extra += g(u, v) - h(u, v);
    }
  CHECK(extra > 0);
  // The upper graph has the same law as an uncoupled sample.
  CHECK(g.edges() == sample({upper, 3, Assignment::FirstHalf}).edges());
  CHECK_THROWS_AS(sample_coupled({lower, 3, Assignment::FirstHalf}, upper), Error);
}

TEST_CASE("MLE weights are the log-odds ratios") {
  const double p1 = 0.3, p2 = 0.2, q = 0.05;
  const auto w = mle_weights(p1, p2, q);
  CHECK(w.psi1 == doctest::Approx(std::log(p1 * (1 - q) / ((1 - p1) * q))));
  CHECK(w.psi2 == doctest::Approx(std::log(p2 * (1 - q) / ((1 - p2) * q))));
  CHECK(w.a == w.psi1);
  CHECK(w.b == -w.psi2);
  CHECK_THROWS_AS(mle_weights(0.3, 0.2, 0.0), Error);
  CHECK_THROWS_AS(mle_weights(0.3, 0.04, 0.05), Error);
}

TEST_CASE("MLE objective ranks balanced labelings like the likelihood") {
  const double p1 = 0.6, p2 = 0.4, q = 0.15;
  const auto w = mle_weights(p1, p2, q);
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const auto g = testing::random_graph(8, 0.4, rng);
    double best_obj = -1e300, best_ll = -1e300;
    Labeling arg_obj = g.truth(), arg_ll = g.truth();
    testing::for_each_balanced(8, [&](const Labeling& s) {
      // Both orientations matter: p1 != p2 breaks the sign symmetry.
      for (const auto& t : {s, s.flipped()}) {
        double llt = 0;
        for (int u = 0; u < 8; ++u)
          for (int v = u + 1; v < 8; ++v) {
            const double pr = t[u] != t[v] ? q : t[u] > 0 ? p1 : p2;
            llt += g.has_edge(u, v) ? std::log(pr) : std::log(1 - pr);
          }
        const double obj = mle_objective(edge_counts(g, t), w);
        if (obj > best_obj + 1e-12) {
          best_obj = obj;
          arg_obj = t;
        }
        if (llt > best_ll + 1e-12) {
          best_ll = llt;
          arg_ll = t;
        }
      }
    });
    CHECK(arg_obj == arg_ll);
  }
}
