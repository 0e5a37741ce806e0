/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "sbmlab/core.hpp"

namespace sbmlab {

/// Log-odds weights of the two within-community edge classes.
///   psi1 = log(p1 (1 - q) / ((1 - p1) q)),  psi2 = log(p2 (1 - q) / ((1 - p2) q))
/// with SDP levels a = psi1 and b = -psi2.
struct MleWeights {
  double psi1 = 0;
  double psi2 = 0;
  double a = 0;
  double b = 0;
};

/// Requires 0 < q < p1, p2 < 1.
MleWeights mle_weights(double p1, double p2, double q);
MleWeights mle_weights(const ModelParams& params);

/// E1 psi1 + E2 psi2. Over balanced labelings this differs from the
/// log-likelihood by a labeling-independent constant.
double mle_objective(const EdgeCounts& counts, const MleWeights& w);

}  // namespace sbmlab
