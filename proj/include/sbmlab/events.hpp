/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

#include "sbmlab/core.hpp"

namespace sbmlab {

/// Raw degree difference (neighbors in C1) - (neighbors in C2) for every vertex.
std::vector<int> degree_differences(const LabeledGraph& g);

/// |T_i| = floor(n / log^3 n).
int anchor_size(int n);

struct EventReport {
  int n = 0;
  double log_n = 0;
  double delta = 0;
  double epsilon = 0;

  // F_i(delta): d_i1 - d_i2 <= delta log n, i in C1.
  // G_j(eps):   d_j1 - d_j2 >= eps log n,   j in C2.
  int f_count = 0;
  int g_count = 0;
  bool any_f() const { return f_count > 0; }
  bool any_g() const { return g_count > 0; }

  /// Improving swaps: pairs (i in C1, j in C2) with z(sigma_{i<->j}) > z(sigma).
  /// The exact difference is 4[(d_j1 - d_j2) - (d_i1 - d_i2) - 2 A_ij].
  long long e_pairs = 0;
  bool any_e() const { return e_pairs > 0; }
  /// Degree-profile form without the A_ij term: max_j (d_j1 - d_j2) > min_i (d_i1 - d_i2).
  bool profile_e = false;
  /// Pairs with F_i and G_j both holding, and those among them that are not
  /// improving swaps (possible only for adjacent pairs when (eps - delta) log n <= 2).
  long long fg_pairs = 0;
  long long fg_not_e = 0;

  /// True when floor(n / log^3 n) < 1: L holds trivially and the proxies are skipped.
  bool degenerate = false;
  int anchor = 0;
  /// Largest number of neighbors inside T_1 (resp. T_2) over vertices of T_1 (resp. T_2).
  int t1_max_internal = 0;
  int t2_max_internal = 0;
  bool likely = false;  // L

  // Proxies over T_1 / T_2 with sums restricted to C_i' = C_i \ T_i and a buffer of 1.
  int fbar_count = 0;
  int gbar_count = 0;
  /// Vertices with L and the proxy but not the original event; zero by construction.
  int containment_violations = 0;

  /// Reverse containment on L: F_i(delta) implies Fbar_i(delta') for i in T_1,
  /// G_j(eps) implies Gbar_j(eps') for j in T_2, at the levels below.
  double delta_prime = 0;
  double epsilon_prime = 0;
  int reverse_checked = 0;
  int reverse_violations = 0;
};

/// Evaluates every event on g with respect to its planted labeling. Requires
/// epsilon > delta. The reverse-containment levels default to
/// delta' = delta + 2 / log n and eps' = eps - 2 / log n, the smallest shift
/// for which the inequality chain d log n + 1 <= d' log n - 1 closes.
EventReport event_scan(const LabeledGraph& g, double delta, double epsilon);
EventReport event_scan(const LabeledGraph& g, double delta, double epsilon, double delta_prime,
                       double epsilon_prime);

}  // namespace sbmlab
