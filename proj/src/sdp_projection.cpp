/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <algorithm>
#include <cmath>
#include <limits>

#include "sbmlab/error.hpp"
#include "sbmlab/sdp.hpp"

namespace sbmlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ShiftBlock {
  std::vector<double>* values;
  double lo;
  double hi;
  double weight;
};

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

double weighted_sum(const std::vector<ShiftBlock>& blocks, double s) {
  double acc = 0;
  for (const auto& b : blocks) {
    double part = 0;
    for (double v : *b.values) part += clip(v + s, b.lo, b.hi);
    acc += b.weight * part;
  }
  return acc;
}

double feasibility_slack(double target) { return 1e-12 * std::max(1.0, std::abs(target)); }

// Finds s with sum_b w_b sum_k clip(v_k + s, lo_b, hi_b) = target and applies
// the clipped shift in place. The left side is nondecreasing in s.
bool shift_clip(std::vector<ShiftBlock>& blocks, double target) {
  double min_total = 0, max_total = 0, vmin = kInf, vmax = -kInf;
  std::size_t count = 0;
  for (const auto& b : blocks) {
    const double m = static_cast<double>(b.values->size());
    min_total += b.weight * m * b.lo;
    max_total += b.weight * m * b.hi;
    for (double v : *b.values) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    count += b.values->size();
  }
  if (count == 0) return std::abs(target) <= feasibility_slack(target);
  const double slack = feasibility_slack(target);
  if (target < min_total - slack || target > max_total + slack) return false;

  double total_weight = 0, free_sum = 0;
  for (const auto& b : blocks) {
    total_weight += b.weight * static_cast<double>(b.values->size());
    for (double v : *b.values) free_sum += b.weight * v;
  }
  // Unclipped shift; the root lies within the value spread of it.
  const double s_free = (target - free_sum) / total_weight;
  double width = vmax - vmin + 1;
  double s_lo = s_free - width, s_hi = s_free + width;
  while (weighted_sum(blocks, s_lo) > target) s_lo -= (width *= 2);
  while (weighted_sum(blocks, s_hi) < target) s_hi += (width *= 2);

  for (int it = 0; it < 100 && s_hi - s_lo > 1e-15 * (1 + std::abs(s_lo) + std::abs(s_hi)); ++it) {
    const double mid = 0.5 * (s_lo + s_hi);
    (weighted_sum(blocks, mid) < target ? s_lo : s_hi) = mid;
  }
  // Exact finish: with the active set fixed, the sum is affine in s.
  double s = 0.5 * (s_lo + s_hi);
  double fixed = 0, free_v = 0, free_w = 0;
  for (const auto& b : blocks) {
    for (double v : *b.values) {
      const double t = v + s;
      if (t <= b.lo)
        fixed += b.weight * b.lo;
      else if (t >= b.hi)
        fixed += b.weight * b.hi;
      else {
        free_v += b.weight * v;
        free_w += b.weight;
      }
    }
  }
  if (free_w > 0) {
    const double exact = (target - fixed - free_v) / free_w;
    if (std::abs(weighted_sum(blocks, exact) - target) <= std::abs(weighted_sum(blocks, s) - target))
      s = exact;
  }
  for (auto& b : blocks)
    for (double& v : *b.values) v = clip(v + s, b.lo, b.hi);
  return true;
}

}  // namespace

std::optional<Eigen::MatrixXd> project_constraints(const SdpProblem& p, const Eigen::MatrixXd& x) {
  const int n = p.n();
  require(x.rows() == n && x.cols() == n, "matrix dimension does not match problem");
  const double lower = p.entry_lower.value_or(-kInf);

  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> off;
  off.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    diag[static_cast<std::size_t>(i)] = x(i, i);
    for (int j = i + 1; j < n; ++j) off.push_back(0.5 * (x(i, j) + x(j, i)));
  }

  const bool diag_fixed = p.diagonal == DiagonalKind::Equality;
  double diag_lo = lower, diag_hi = p.diagonal_value;
  if (diag_fixed) {
    if (p.diagonal_value < lower) return std::nullopt;
    diag_lo = diag_hi = p.diagonal_value;
    std::fill(diag.begin(), diag.end(), p.diagonal_value);
  }
  if (diag_lo > diag_hi) return std::nullopt;

  if (p.trace) {
    std::vector<ShiftBlock> d{{&diag, diag_lo, diag_hi, 1.0}};
    if (!shift_clip(d, *p.trace)) return std::nullopt;
    if (p.total) {
      std::vector<ShiftBlock> o{{&off, lower, kInf, 2.0}};
      if (!shift_clip(o, *p.total - *p.trace)) return std::nullopt;
    } else {
      for (double& v : off) v = std::max(v, lower);
    }
  } else if (p.total) {
    if (diag_fixed) {
      std::vector<ShiftBlock> o{{&off, lower, kInf, 2.0}};
      if (!shift_clip(o, *p.total - n * p.diagonal_value)) return std::nullopt;
    } else {
      std::vector<ShiftBlock> both{{&diag, diag_lo, diag_hi, 1.0}, {&off, lower, kInf, 2.0}};
      if (!shift_clip(both, *p.total)) return std::nullopt;
    }
  } else {
    for (double& v : diag) v = clip(v, diag_lo, diag_hi);
    for (double& v : off) v = std::max(v, lower);
  }

  Eigen::MatrixXd out(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    out(i, i) = diag[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      out(i, j) = out(j, i) = off[k++];
    }
  }
  return out;
}

}  // namespace sbmlab
