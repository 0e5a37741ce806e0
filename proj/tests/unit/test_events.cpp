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
#include "sbmlab/events.hpp"
#include "sbmlab/sbm.hpp"

using namespace sbmlab;

namespace {

struct Direct {
  int f = 0, g = 0, fbar = 0, gbar = 0;
  long long e = 0;
  bool profile_e = false;
  int t1_internal = 0, t2_internal = 0;
};

// Recomputes every event from adjacency rows.
Direct direct_events(const LabeledGraph& g, double delta, double eps) {
  const int n = g.n();
  const double l = std::log(static_cast<double>(n));
  const auto& s = g.truth();
  const auto c1 = s.members(1), c2 = s.members(-1);
  auto diff = [&](int u, const std::vector<char>* skip) {
    int d = 0;
    for (int v = 0; v < n; ++v)
      if (g.has_edge(u, v) && !(skip && (*skip)[static_cast<std::size_t>(v)])) d += s[v];
    return d;
  };
  Direct out;
  int min1 = 1 << 30, max2 = -(1 << 30);
  for (int i : c1) {
    out.f += diff(i, nullptr) <= delta * l;
    min1 = std::min(min1, diff(i, nullptr));
  }
  for (int j : c2) {
    out.g += diff(j, nullptr) >= eps * l;
    max2 = std::max(max2, diff(j, nullptr));
  }
  out.profile_e = max2 > min1;
  for (int i : c1)
    for (int j : c2) out.e += swap_delta(g, s, i, j) > 0;

  const int k = static_cast<int>(std::floor(n / (l * l * l)));
  if (k < 1) return out;
  std::vector<char> in_t(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < k; ++a) {
    in_t[static_cast<std::size_t>(c1[static_cast<std::size_t>(a)])] = 1;
    in_t[static_cast<std::size_t>(c2[static_cast<std::size_t>(a)])] = 1;
  }
  for (int a = 0; a < k; ++a) {
    const int i = c1[static_cast<std::size_t>(a)], j = c2[static_cast<std::size_t>(a)];
    int own1 = 0, own2 = 0;
    for (int b = 0; b < k; ++b) {
      own1 += g.has_edge(i, c1[static_cast<std::size_t>(b)]);
      own2 += g.has_edge(j, c2[static_cast<std::size_t>(b)]);
    }
    out.t1_internal = std::max(out.t1_internal, own1);
    out.t2_internal = std::max(out.t2_internal, own2);
    out.fbar += diff(i, &in_t) + 1 < delta * l;
    out.gbar += -diff(j, &in_t) + 1 < -eps * l;
  }
  return out;
}

}  // namespace

TEST_CASE("anchor size") {
  CHECK(anchor_size(1000) == static_cast<int>(std::floor(1000 / std::pow(std::log(1000.0), 3))));
  CHECK(anchor_size(1000) == 3);
  CHECK(anchor_size(20) == 0);
}

TEST_CASE("degree differences") {
  const auto g = testing::two_cliques(8);
  const auto d = degree_differences(g);
  CHECK(d[0] == 3);
  CHECK(d[7] == -3);
}

TEST_CASE("event scan matches a direct recomputation") {
  const auto p = ModelParams::create(1000, 26.3, 12.5, 10);
  for (int k = 0; k < 4; ++k) {
    const auto g = sample({p, trial_seed(31, k), Assignment::RandomPermutation});
    const double delta = 2.6, eps = 3.1;
    const auto r = event_scan(g, delta, eps);
    const auto d = direct_events(g, delta, eps);
    CHECK(r.f_count == d.f);
    CHECK(r.g_count == d.g);
    CHECK(r.e_pairs == d.e);
    CHECK(r.profile_e == d.profile_e);
    CHECK(r.anchor == 3);
    CHECK_FALSE(r.degenerate);
    CHECK(r.t1_max_internal == d.t1_internal);
    CHECK(r.t2_max_internal == d.t2_internal);
    CHECK(r.likely == (d.t1_internal <= 1 && d.t2_internal <= 1));
    CHECK(r.fbar_count == d.fbar);
    CHECK(r.gbar_count == d.gbar);
  }
}

TEST_CASE("proxy events imply the original events on L") {
  const auto p = ModelParams::create(1000, 4, 4, 0.25);
  for (int k = 0; k < 10; ++k) {
    const auto g = sample({p, trial_seed(37, k), Assignment::FirstHalf});
    // Levels near the bulk so the proxies fire.
    const auto r = event_scan(g, 0.5, 0.6);
    CHECK(r.containment_violations == 0);
    CHECK(r.reverse_violations <= r.reverse_checked);
  }
}

TEST_CASE("F and G pairs fail to swap only across an edge") {
  const auto p = ModelParams::create(300, 26.3, 12.5, 10);
  const double l = std::log(300.0);
  for (int k = 0; k < 10; ++k) {
    const auto g = sample({p, trial_seed(41, k), Assignment::FirstHalf});
    // (eps - delta) log n < 2 leaves room for adjacent exceptions.
    const double delta = 2.8, eps = delta + 1.5 / l;
    const auto r = event_scan(g, delta, eps);
    const auto diff = degree_differences(g);
    long long fg = 0, not_e = 0;
    for (int i : g.truth().members(1))
      for (int j : g.truth().members(-1)) {
        if (!(diff[static_cast<std::size_t>(i)] <= delta * l && diff[static_cast<std::size_t>(j)] >= eps * l))
          continue;
        ++fg;
        if (swap_delta(g, g.truth(), i, j) <= 0) {
          ++not_e;
          CHECK(g.has_edge(i, j));
        }
      }
    CHECK(r.fg_pairs == fg);
    CHECK(r.fg_not_e == not_e);
  }
}

TEST_CASE("small graphs are degenerate") {
  const auto g = testing::two_cliques(20);
  const auto r = event_scan(g, 0.0, 1.0);
  CHECK(r.degenerate);
  CHECK(r.likely);
  CHECK(r.fbar_count == 0);
}

TEST_CASE("event levels must be ordered") {
  const auto g = testing::two_cliques(8);
  CHECK_THROWS_AS(event_scan(g, 1.0, 1.0), Error);
  CHECK_THROWS_AS(event_scan(g, NAN, 1.0), Error);
  const auto r = event_scan(g, 0.0, 1.0, 0.5, 0.5);
  CHECK(r.delta_prime == 0.5);
  const auto d = event_scan(g, 0.0, 1.0);
  CHECK(d.delta_prime == doctest::Approx(2 / std::log(8.0)));
  CHECK(d.epsilon_prime == doctest::Approx(1 - 2 / std::log(8.0)));
}
