/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/threshold.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "sbmlab/error.hpp"
#include "sbmlab/mle.hpp"

namespace sbmlab {

namespace {

constexpr double kGolden = 0.6180339887498949;

void validate(const Rates& r) {
  require(std::isfinite(r.alpha1) && std::isfinite(r.alpha2) && std::isfinite(r.beta),
          "rates must be finite");
  require(r.alpha1 > 0 && r.alpha2 > 0 && r.beta > 0, "alpha1, alpha2, beta must be positive");
}

double it_objective(const Rates& r, double t) {
  return 0.5 * (t * r.alpha1 + (1 - t) * r.alpha2 + r.beta -
                std::pow(r.beta, t) * std::pow(r.alpha2, 1 - t) -
                std::pow(r.beta, 1 - t) * std::pow(r.alpha1, t));
}

// Golden-section maximization of a unimodal f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  double a = lo, b = hi;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Poisson rates (before halving) of the two coordinates for each community.
struct CloudRates {
  double rx, ry;
};

CloudRates cloud_rates(int community, const Rates& r) {
  require(community == 1 || community == 2, "community must be 1 or 2");
  return community == 1 ? CloudRates{r.alpha1, r.beta} : CloudRates{r.beta, r.alpha2};
}

double xlog_term(double x, double rate) {
  if (x == 0) return 0;
  return x * (1 + std::log(rate / (2 * x)));
}

double exponent_at(const CloudRates& c, double x, double y) {
  return -(c.rx + c.ry) / 2 + xlog_term(x, c.rx) + xlog_term(y, c.ry);
}

// Boundary point of {exponent >= level} along direction theta from the mean.
CloudPoint ray_boundary(const CloudRates& c, double theta, double level) {
  const double cx = c.rx / 2, cy = c.ry / 2;
  const double dx = std::cos(theta), dy = std::sin(theta);
  double r_max = std::numeric_limits<double>::infinity();
  if (dx < 0) r_max = std::min(r_max, cx / -dx);
  if (dy < 0) r_max = std::min(r_max, cy / -dy);
  auto at = [&](double r) {
    return std::pair{std::max(cx + r * dx, 0.0), std::max(cy + r * dy, 0.0)};
  };
  auto f = [&](double r) {
    auto [x, y] = at(r);
    return exponent_at(c, x, y) - level;
  };
  double hi;
  if (std::isfinite(r_max)) {
    if (f(r_max) >= 0) {
      auto [x, y] = at(r_max);
      return {x, y, exponent_at(c, x, y)};
    }
    hi = r_max;
  } else {
    hi = std::max(cx, cy) + 1;
    while (f(hi) >= 0) hi *= 2;
  }
  double lo = 0;
  // Exponent is 0 at the mean and decreases along the ray.
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= 0 ? lo : hi) = mid;
  }
  auto [x, y] = at(lo);
  return {x, y, exponent_at(c, x, y)};
}

}  // namespace

ITEvaluation it_value(const Rates& r) {
  validate(r);
  auto f = [&](double t) { return it_objective(r, t); };
  constexpr int kGrid = 1000;
  int best = 0;
  double best_val = f(0);
  for (int k = 1; k <= kGrid; ++k) {
    const double v = f(static_cast<double>(k) / kGrid);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  const double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
  const double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
  const double t = golden_max(f, lo, hi, 1e-10);
  ITEvaluation out{f(t), t};
  if (best_val > out.value) out = {best_val, static_cast<double>(best) / kGrid};
  out.value = std::max(out.value, 0.0);
  return out;
}

namespace {

template <class F>
double bisect_unit_level(F&& it_of, double lo, double hi_start, const char* what) {
  if (it_of(lo) >= 1)
    throw Error(ErrorCode::NoRoot, std::string(what) + ": IT >= 1 already at alpha1 = beta");
  double hi = hi_start;
  while (it_of(hi) <= 1) {
    hi *= 2;
    if (hi > 1e8) throw Error(ErrorCode::NoRoot, std::string(what) + ": no bracket found");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = it_of(mid);
    if (std::abs(v - 1) <= 1e-12 || hi - lo <= 1e-15 * hi) return mid;
    (v < 1 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double boundary_alpha(double beta, double alpha2) {
  require(beta > 0 && alpha2 > 0, "beta and alpha2 must be positive");
  return bisect_unit_level([&](double a1) { return it_value({a1, alpha2, beta}).value; }, beta,
                           std::max({2 * beta, alpha2, 1.0}), "boundary_alpha");
}

double boundary_alpha_symmetric(double beta) {
  require(beta > 0, "beta must be positive");
  return bisect_unit_level([&](double a) { return it_value({a, a, beta}).value; }, beta,
                           std::max(2 * beta, 1.0), "boundary_alpha_symmetric");
}

double cloud_exponent(int community, double x, double y, const Rates& r) {
  validate(r);
  require(x >= 0 && y >= 0, "cloud coordinates must be nonnegative");
  return exponent_at(cloud_rates(community, r), x, y);
}

bool in_cloud(int community, double x, double y, const Rates& r, const CloudOptions& opt) {
  return cloud_exponent(community, x, y, r) > opt.level;
}

std::vector<CloudPoint> cloud_boundary(int community, const Rates& r, int points,
                                       const CloudOptions& opt) {
  validate(r);
  require(points >= 3, "boundary needs at least 3 points");
  require(opt.level < 0, "cloud level must be negative");
  const auto c = cloud_rates(community, r);
  std::vector<CloudPoint> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k)
    out.push_back(ray_boundary(c, 2 * std::numbers::pi * k / points, opt.level));
  return out;
}

CloudExtreme cloud_extreme(int community, const Rates& r, const CloudOptions& opt) {
  validate(r);
  require(opt.angles >= 8, "need at least 8 boundary angles");
  require(opt.level < 0, "cloud level must be negative");
  const auto c = cloud_rates(community, r);
  // Maximize score = sign * (x - y); sign = -1 for cloud 1 (minimization).
  const double sign = community == 1 ? -1.0 : 1.0;
  auto score = [&](double theta) {
    const auto p = ray_boundary(c, theta, opt.level);
    return sign * (p.x - p.y);
  };
  const double step = 2 * std::numbers::pi / opt.angles;
  int best = 0;
  double best_val = score(0);
  for (int k = 1; k < opt.angles; ++k) {
    const double v = score(k * step);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  const double theta = golden_max(score, (best - 1) * step, (best + 1) * step, 1e-13);
  CloudPoint p = ray_boundary(c, theta, opt.level);
  if (sign * (p.x - p.y) < best_val) p = ray_boundary(c, best * step, opt.level);

  CloudExtreme out;
  out.point = p;
  out.value = p.x - p.y;
  out.lagrange_residual = (p.x > 0 && p.y > 0)
                              ? std::log(c.rx / (2 * p.x)) + std::log(c.ry / (2 * p.y))
                              : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double witness_gap(const Rates& r, const CloudOptions& opt) {
  return cloud_extreme(2, r, opt).value - cloud_extreme(1, r, opt).value;
}

std::optional<WitnessPair> find_witness(const Rates& r, const CloudOptions& opt) {
  const auto e1 = cloud_extreme(1, r, opt);
  const auto e2 = cloud_extreme(2, r, opt);
  const double gap = e2.value - e1.value;
  if (!(gap > 0)) return std::nullopt;
  WitnessPair w;
  w.p1 = e1.point;
  w.p2 = e2.point;
  w.gap = gap;
  const double dx = w.p1.x - w.p2.x;
  w.slope = dx != 0 ? (w.p1.y - w.p2.y) / dx : std::numeric_limits<double>::infinity();
  w.delta = e1.value + gap / 3;
  w.epsilon = e1.value + 2 * gap / 3;
  return w;
}

CloudPoint touch_point(const Rates& r) {
  const double t = it_value(r).argmax_t;
  CloudPoint p;
  p.x = std::pow(r.alpha1 / 2, t) * std::pow(r.beta / 2, 1 - t);
  p.y = std::pow(r.beta / 2, t) * std::pow(r.alpha2 / 2, 1 - t);
  p.exponent = cloud_exponent(1, p.x, p.y, r);
  return p;
}

const char* region_name(RegionClass c) {
  switch (c) {
    case RegionClass::Infeasible:
      return "Infeasible";
    case RegionClass::FeasibleNoWitness:
      return "FeasibleNoWitness";
    case RegionClass::FeasibleWitness:
      return "FeasibleWitness";
  }
  return "?";
}

namespace {

std::vector<double> linspace(Range r, int k) {
  std::vector<double> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * i / (k - 1);
  return v;
}

}  // namespace

RegionRaster witness_region(double beta, Range a1, Range a2, int res1, int res2,
                            const CloudOptions& opt) {
  require(res1 >= 2 && res2 >= 2, "grid resolution must be at least 2 per axis");
  require(a1.lo > 0 && a1.hi > a1.lo && a2.lo > 0 && a2.hi > a2.lo, "bad alpha ranges");
  require(beta > 0, "beta must be positive");
  RegionRaster out;
  out.beta = beta;
  out.alpha1 = linspace(a1, res1);
  out.alpha2 = linspace(a2, res2);
  // Cloud 1 depends only on (alpha1, beta) and cloud 2 only on (alpha2, beta),
  // so the extremes are computed once per axis value.
  std::vector<double> min1, max2;
  for (double a : out.alpha1) min1.push_back(cloud_extreme(1, {a, a, beta}, opt).value);
  for (double a : out.alpha2) max2.push_back(cloud_extreme(2, {a, a, beta}, opt).value);
  const std::size_t cells = out.alpha1.size() * out.alpha2.size();
  out.cells.resize(cells);
  out.it.resize(cells);
  out.gap.resize(cells);
  for (std::size_t i = 0; i < out.alpha1.size(); ++i) {
    for (std::size_t j = 0; j < out.alpha2.size(); ++j) {
      const std::size_t k = i * out.alpha2.size() + j;
      out.it[k] = it_value({out.alpha1[i], out.alpha2[j], beta}).value;
      out.gap[k] = max2[j] - min1[i];
      if (out.it[k] < 1)
        out.cells[k] = RegionClass::Infeasible;
      else
        out.cells[k] = out.gap[k] > 0 ? RegionClass::FeasibleWitness : RegionClass::FeasibleNoWitness;
    }
  }
  return out;
}

void write_region_csv(const RegionRaster& raster, std::ostream& out) {
  out << "alpha1,alpha2,beta,it,gap,region\n";
  out << std::setprecision(12);
  for (std::size_t i = 0; i < raster.alpha1.size(); ++i)
    for (std::size_t j = 0; j < raster.alpha2.size(); ++j) {
      const std::size_t k = i * raster.alpha2.size() + j;
      out << raster.alpha1[i] << ',' << raster.alpha2[j] << ',' << raster.beta << ','
          << raster.it[k] << ',' << raster.gap[k] << ',' << region_name(raster.cells[k]) << '\n';
    }
}

int genie_sym(const DegreeProfile& d) { return d.d1 - d.d2 >= 0 ? 1 : -1; }

double genie_asym_statistic(long long raw_d1, long long raw_d2, const ModelParams& params) {
  const MleWeights w = mle_weights(params);
  return static_cast<double>(raw_d1) * w.psi1 - static_cast<double>(raw_d2) * w.psi2 +
         0.5 * params.n() * (std::log1p(-params.p1()) - std::log1p(-params.p2()));
}

int genie_asym(long long raw_d1, long long raw_d2, const ModelParams& params) {
  return genie_asym_statistic(raw_d1, raw_d2, params) >= 0 ? 1 : -1;
}

}  // namespace sbmlab
