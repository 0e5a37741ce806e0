/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/events.hpp"

#include <algorithm>
#include <cmath>

#include "sbmlab/error.hpp"

namespace sbmlab {

std::vector<int> degree_differences(const LabeledGraph& g) {
  const auto& sigma = g.truth();
  std::vector<int> out(static_cast<std::size_t>(g.n()), 0);
  for (int u = 0; u < g.n(); ++u) {
    auto r = g.row(u);
    int acc = 0;
    for (int v = 0; v < g.n(); ++v)
      if (r[static_cast<std::size_t>(v)]) acc += sigma[v];
    out[static_cast<std::size_t>(u)] = acc;
  }
  return out;
}

int anchor_size(int n) {
  const double l = std::log(static_cast<double>(n));
  return static_cast<int>(std::floor(n / (l * l * l)));
}

EventReport event_scan(const LabeledGraph& g, double delta, double epsilon) {
  const double log_n = std::log(static_cast<double>(g.n()));
  return event_scan(g, delta, epsilon, delta + 2 / log_n, epsilon - 2 / log_n);
}

EventReport event_scan(const LabeledGraph& g, double delta, double epsilon, double delta_prime,
                       double epsilon_prime) {
  require(std::isfinite(delta) && std::isfinite(epsilon) && epsilon > delta,
          "event scan needs finite delta < epsilon");
  require(std::isfinite(delta_prime) && std::isfinite(epsilon_prime),
          "reverse containment levels must be finite");
  const int n = g.n();
  const auto& sigma = g.truth();
  EventReport r;
  r.n = n;
  r.log_n = std::log(static_cast<double>(n));
  r.delta = delta;
  r.epsilon = epsilon;
  r.delta_prime = delta_prime;
  r.epsilon_prime = epsilon_prime;

  const auto diff = degree_differences(g);
  const auto c1 = sigma.members(1);
  const auto c2 = sigma.members(-1);
  const double f_level = delta * r.log_n;
  const double g_level = epsilon * r.log_n;
  auto f_holds = [&](int i) { return diff[static_cast<std::size_t>(i)] <= f_level; };
  auto g_holds = [&](int j) { return diff[static_cast<std::size_t>(j)] >= g_level; };

  int min_c1 = 0, max_c2 = 0;
  bool first = true;
  for (int i : c1) {
    if (f_holds(i)) ++r.f_count;
    min_c1 = first ? diff[static_cast<std::size_t>(i)] : std::min(min_c1, diff[static_cast<std::size_t>(i)]);
    first = false;
  }
  first = true;
  for (int j : c2) {
    if (g_holds(j)) ++r.g_count;
    max_c2 = first ? diff[static_cast<std::size_t>(j)] : std::max(max_c2, diff[static_cast<std::size_t>(j)]);
    first = false;
  }
  r.profile_e = !c1.empty() && !c2.empty() && max_c2 > min_c1;

  for (int i : c1) {
    const int di = diff[static_cast<std::size_t>(i)];
    const bool fi = f_holds(i);
    for (int j : c2) {
      const int swing = diff[static_cast<std::size_t>(j)] - di - 2 * g(i, j);
      const bool e = swing > 0;
      if (e) ++r.e_pairs;
      if (fi && g_holds(j)) {
        ++r.fg_pairs;
        if (!e) ++r.fg_not_e;
      }
    }
  }

  r.anchor = anchor_size(n);
  r.degenerate = r.anchor < 1 || r.anchor > static_cast<int>(std::min(c1.size(), c2.size()));
  if (r.degenerate) {
    r.likely = true;
    return r;
  }
  const std::vector<int> t1(c1.begin(), c1.begin() + r.anchor);
  const std::vector<int> t2(c2.begin(), c2.begin() + r.anchor);
  std::vector<char> in_t(static_cast<std::size_t>(n), 0);
  for (int u : t1) in_t[static_cast<std::size_t>(u)] = 1;
  for (int u : t2) in_t[static_cast<std::size_t>(u)] = 2;

  // Sums over T_1, T_2 and the primed remainders.
  auto split = [&](int u, int& own_t, int& restricted) {
    auto row = g.row(u);
    int t_one = 0, t_two = 0;
    for (int v = 0; v < n; ++v) {
      if (!row[static_cast<std::size_t>(v)]) continue;
      const char t = in_t[static_cast<std::size_t>(v)];
      if (t == 1) ++t_one;
      if (t == 2) ++t_two;
    }
    own_t = sigma[u] > 0 ? t_one : t_two;
    // (C1' sum) - (C2' sum) = full difference minus the T parts.
    restricted = diff[static_cast<std::size_t>(u)] - t_one + t_two;
  };

  std::vector<int> t1_restricted, t2_restricted;
  for (int i : t1) {
    int own = 0, rest = 0;
    split(i, own, rest);
    r.t1_max_internal = std::max(r.t1_max_internal, own);
    t1_restricted.push_back(rest);
  }
  for (int j : t2) {
    int own = 0, rest = 0;
    split(j, own, rest);
    r.t2_max_internal = std::max(r.t2_max_internal, own);
    t2_restricted.push_back(rest);
  }
  r.likely = r.t1_max_internal <= 1 && r.t2_max_internal <= 1;

  // Fbar_i(d): (C1' - C2') + 1 < d log n.  Gbar_j(e): (C2' - C1') + 1 < -e log n.
  auto fbar = [&](int rest, double level) { return rest + 1 < level * r.log_n; };
  auto gbar = [&](int rest, double level) { return -rest + 1 < -level * r.log_n; };
  for (std::size_t k = 0; k < t1.size(); ++k) {
    const bool proxy = fbar(t1_restricted[k], delta);
    if (proxy) ++r.fbar_count;
    if (r.likely && proxy && !f_holds(t1[k])) ++r.containment_violations;
    if (r.likely && f_holds(t1[k])) {
      ++r.reverse_checked;
      if (!fbar(t1_restricted[k], delta_prime)) ++r.reverse_violations;
    }
  }
  for (std::size_t k = 0; k < t2.size(); ++k) {
    const bool proxy = gbar(t2_restricted[k], epsilon);
    if (proxy) ++r.gbar_count;
    if (r.likely && proxy && !g_holds(t2[k])) ++r.containment_violations;
    if (r.likely && g_holds(t2[k])) {
      ++r.reverse_checked;
      if (!gbar(t2_restricted[k], epsilon_prime)) ++r.reverse_violations;
    }
  }
  return r;
}

}  // namespace sbmlab
