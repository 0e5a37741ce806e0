/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "sbmlab/core.hpp"

namespace sbmlab {

enum class Assignment { FirstHalf, RandomPermutation };

struct SampleConfig {
  ModelParams params;
  std::uint64_t seed = 0;
  Assignment assignment = Assignment::FirstHalf;
};

// Stream splitting: trial k of an experiment with base seed s uses seed s + k.
// Each seed is whitened with splitmix64 before it seeds an mt19937_64, so
// adjacent seeds give unrelated streams and results do not depend on the
// order in which trials are scheduled.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);
std::mt19937_64 make_engine(std::uint64_t seed);
/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& rng);

/// Draws SBM(n, alpha1, alpha2, beta). Pairs are visited in row-major (u < v)
/// order with one uniform draw each, so the seed fixes the graph bit for bit.
LabeledGraph sample(const SampleConfig& cfg);

/// Monotone coupling: one uniform per pair drives both graphs, so with
/// entrywise smaller probabilities in `lower` the second graph is a subgraph
/// of the first. Both use cfg's labeling.
std::pair<LabeledGraph, LabeledGraph> sample_coupled(const SampleConfig& cfg,
                                                     const ModelParams& lower);

}  // namespace sbmlab
