/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "sbmlab/core.hpp"

namespace testing {

// Erdos-Renyi graph with a first-half labeling; independent of the library sampler.
inline sbmlab::LabeledGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return sbmlab::LabeledGraph::from_edges(n, edges, sbmlab::Labeling::first_half(n));
}

// Two disjoint cliques on the halves of a first-half labeling.
inline sbmlab::LabeledGraph two_cliques(int n) {
  std::vector<std::pair<int, int>> edges;
  const int h = n / 2;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if ((u < h) == (v < h)) edges.emplace_back(u, v);
  return sbmlab::LabeledGraph::from_edges(n, edges, sbmlab::Labeling::first_half(n));
}

// Calls f on every balanced labeling with vertex 0 in C1.
inline void for_each_balanced(int n, const std::function<void(const sbmlab::Labeling&)>& f) {
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & 1u) || __builtin_popcount(mask) != n / 2) continue;
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) v[static_cast<std::size_t>(u)] = (mask >> u) & 1u ? 1 : -1;
    f(sbmlab::Labeling::from_values(v));
  }
}

// sum_{u != v} A_uv s_u s_v straight from the definition.
inline long long z_direct(const sbmlab::LabeledGraph& g, const sbmlab::Labeling& s) {
  long long z = 0;
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (g.has_edge(u, v)) z += s[u] * s[v];
  return z;
}

}  // namespace testing
