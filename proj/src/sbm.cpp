/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/sbm.hpp"

#include <limits>

#include "sbmlab/error.hpp"

namespace sbmlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
  return base_seed + static_cast<std::uint64_t>(trial);
}

std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

// Unbiased integer in [0, bound) by rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

Labeling draw_labeling(int n, Assignment assignment, std::mt19937_64& rng) {
  Labeling base = Labeling::first_half(n);
  if (assignment == Assignment::FirstHalf) return base;
  std::vector<int> v(base.values().begin(), base.values().end());
  for (int k = n - 1; k > 0; --k) {
    const auto m = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(k) + 1));
    std::swap(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(m)]);
  }
  return Labeling::from_values(std::move(v));
}

double pair_probability(const ModelParams& p, const Labeling& sigma, int u, int v) {
  if (sigma[u] != sigma[v]) return p.q();
  return sigma[u] > 0 ? p.p1() : p.p2();
}

}  // namespace

LabeledGraph sample(const SampleConfig& cfg) {
  const int n = cfg.params.n();
  auto rng = make_engine(cfg.seed);
  Labeling sigma = draw_labeling(n, cfg.assignment, rng);
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (uniform01(rng) < pair_probability(cfg.params, sigma, u, v)) {
        adj[static_cast<std::size_t>(u) * n + v] = 1;
        adj[static_cast<std::size_t>(v) * n + u] = 1;
      }
    }
  }
  return LabeledGraph(n, std::move(adj), std::move(sigma));
}

std::pair<LabeledGraph, LabeledGraph> sample_coupled(const SampleConfig& cfg,
                                                     const ModelParams& lower) {
  const auto& upper = cfg.params;
  require(lower.n() == upper.n(), "coupled models must share n");
  require(lower.p1() <= upper.p1() && lower.p2() <= upper.p2() && lower.q() <= upper.q(),
          "coupled model must have entrywise smaller probabilities");
  const int n = upper.n();
  auto rng = make_engine(cfg.seed);
  Labeling sigma = draw_labeling(n, cfg.assignment, rng);
  std::vector<std::uint8_t> hi(static_cast<std::size_t>(n) * n, 0), lo = hi;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double x = uniform01(rng);
      const auto a = static_cast<std::size_t>(u) * n + v;
      const auto b = static_cast<std::size_t>(v) * n + u;
      if (x < pair_probability(upper, sigma, u, v)) hi[a] = hi[b] = 1;
      if (x < pair_probability(lower, sigma, u, v)) lo[a] = lo[b] = 1;
    }
  }
  return {LabeledGraph(n, std::move(hi), sigma), LabeledGraph(n, std::move(lo), sigma)};
}

}  // namespace sbmlab
