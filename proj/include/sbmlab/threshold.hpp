/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "sbmlab/core.hpp"

namespace sbmlab {

/// Rate coefficients (alpha1, alpha2, beta) of the logarithmic-degree regime.
struct Rates {
  double alpha1 = 0;
  double alpha2 = 0;
  double beta = 0;

  static Rates of(const ModelParams& p) { return {p.alpha1(), p.alpha2(), p.beta()}; }
};

struct ITEvaluation {
  double value = 0;
  double argmax_t = 0;
};

/// sup over t in [0,1] of
///   (1/2) [t a1 + (1-t) a2 + b - b^t a2^(1-t) - b^(1-t) a1^t].
/// The objective is concave in t: a 1001-point grid picks the bracket and
/// golden-section search narrows it to |dt| <= 1e-10.
ITEvaluation it_value(const Rates& r);

/// alpha1 > beta with IT(alpha1, alpha2, beta) = 1 to within 1e-8, by bisection.
/// The bracket starts at (beta, max(2 beta, alpha2)) and the upper end doubles
/// until IT exceeds 1. Throws ErrorCode::NoRoot if no bracket exists.
double boundary_alpha(double beta, double alpha2);
/// Same along the diagonal alpha1 = alpha2.
double boundary_alpha_symmetric(double beta);

struct CloudPoint {
  double x = 0;
  double y = 0;
  double exponent = 0;
};

/// Exponent of n in P(d_u = (x, y)) for u in `community` (1 or 2):
///   community 1: -(a1 + b)/2 + x log(a1 e / 2x) + y log(b e / 2y)
///   community 2: -(b + a2)/2 + x log(b e / 2x) + y log(a2 e / 2y)
/// with x log(c/x) := 0 at x = 0.
double cloud_exponent(int community, double x, double y, const Rates& r);

struct CloudOptions {
  /// Cloud membership cutoff: in-cloud iff exponent > level.
  double level = -1.0;
  /// Boundary angles scanned before local refinement.
  int angles = 2000;
};

bool in_cloud(int community, double x, double y, const Rates& r, const CloudOptions& opt = {});

/// Boundary of {exponent >= level} traced along `points` rays from the Poisson
/// mean. The cloud is convex (the exponent is concave), so each ray crosses once.
std::vector<CloudPoint> cloud_boundary(int community, const Rates& r, int points,
                                       const CloudOptions& opt = {});

struct CloudExtreme {
  CloudPoint point;
  double value = 0;  // x - y at point
  /// log(rx / 2x) + log(ry / 2y): zero at an interior Lagrange point.
  double lagrange_residual = 0;
};

/// Community 1: minimizes x - y over the closed cloud. Community 2: maximizes it.
CloudExtreme cloud_extreme(int community, const Rates& r, const CloudOptions& opt = {});

struct WitnessPair {
  CloudPoint p1;  // in cloud 1
  CloudPoint p2;  // in cloud 2
  double slope = 0;  // +inf when x1 == x2
  double gap = 0;    // (x2 - y2) - (x1 - y1) > 0
  /// Separating levels splitting [x1 - y1, x2 - y2] at one and two thirds.
  double delta = 0;
  double epsilon = 0;
};

/// max over cloud 2 of (x - y) minus min over cloud 1 of (x - y).
double witness_gap(const Rates& r, const CloudOptions& opt = {});
std::optional<WitnessPair> find_witness(const Rates& r, const CloudOptions& opt = {});

/// Point where both exponents equal -IT: ((a1/2)^t (b/2)^(1-t), (b/2)^t (a2/2)^(1-t))
/// at the maximizing t. At IT = 1 this is where the two clouds touch.
CloudPoint touch_point(const Rates& r);

enum class RegionClass { Infeasible = 0, FeasibleNoWitness = 1, FeasibleWitness = 2 };
const char* region_name(RegionClass c);

struct Range {
  double lo = 0;
  double hi = 0;
};

struct RegionRaster {
  double beta = 0;
  std::vector<double> alpha1;  // axis values, ascending
  std::vector<double> alpha2;
  std::vector<RegionClass> cells;  // row-major: index i * alpha2.size() + j
  std::vector<double> it;
  std::vector<double> gap;

  RegionClass at(std::size_t i, std::size_t j) const { return cells[i * alpha2.size() + j]; }
};

/// Classifies every (alpha1, alpha2) grid node: Infeasible if IT < 1,
/// FeasibleWitness if IT >= 1 and a witness pair exists, else FeasibleNoWitness.
RegionRaster witness_region(double beta, Range a1, Range a2, int res1, int res2,
                            const CloudOptions& opt = {});
/// CSV columns: alpha1,alpha2,beta,it,gap,region
void write_region_csv(const RegionRaster& raster, std::ostream& out);

/// sign(d1 - d2), with sign(0) = +1.
int genie_sym(const DegreeProfile& d);

/// d1 psi1 - d2 psi2 + (n/2) log((1 - p1)/(1 - p2)) on raw degrees.
double genie_asym_statistic(long long raw_d1, long long raw_d2, const ModelParams& params);
/// Sign of the statistic, +1 on exact zero.
int genie_asym(long long raw_d1, long long raw_d2, const ModelParams& params);

}  // namespace sbmlab
