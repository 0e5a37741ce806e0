/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/mle.hpp"

#include <cmath>

#include "sbmlab/error.hpp"

namespace sbmlab {

namespace {

double log_odds_ratio(double p, double q) {
  return std::log(p) - std::log1p(-p) + std::log1p(-q) - std::log(q);
}

}  // namespace

MleWeights mle_weights(double p1, double p2, double q) {
  require(q > 0 && p1 < 1 && p2 < 1, "weights need probabilities strictly inside (0, 1)");
  require(p1 > q && p2 > q, "weights need p1 > q and p2 > q");
  MleWeights w;
  w.psi1 = log_odds_ratio(p1, q);
  w.psi2 = log_odds_ratio(p2, q);
  w.a = w.psi1;
  w.b = -w.psi2;
  return w;
}

MleWeights mle_weights(const ModelParams& params) {
  return mle_weights(params.p1(), params.p2(), params.q());
}

double mle_objective(const EdgeCounts& counts, const MleWeights& w) {
  return static_cast<double>(counts.e1) * w.psi1 + static_cast<double>(counts.e2) * w.psi2;
}

}  // namespace sbmlab
