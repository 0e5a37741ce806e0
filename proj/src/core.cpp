/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sbmlab/error.hpp"

namespace sbmlab {

ModelParams ModelParams::create(int n, double alpha1, double alpha2, double beta) {
  require(n >= 4 && n % 2 == 0, "n must be even and at least 4");
  require(std::isfinite(alpha1) && std::isfinite(alpha2) && std::isfinite(beta),
          "rate coefficients must be finite");
  require(alpha1 > 0 && alpha2 > 0, "alpha1 and alpha2 must be positive");
  require(beta >= 0, "beta must be nonnegative");

  ModelParams m;
  m.n_ = n;
  m.alpha1_ = alpha1;
  m.alpha2_ = alpha2;
  m.beta_ = beta;
  m.log_n_ = std::log(static_cast<double>(n));
  const double scale = m.log_n_ / n;
  m.p1_ = alpha1 * scale;
  m.p2_ = alpha2 * scale;
  m.q_ = beta * scale;
  if (m.p1_ > 1 || m.p2_ > 1 || m.q_ > 1) {
    std::ostringstream os;
    os << "derived edge probability exceeds 1 (p1=" << m.p1_ << ", p2=" << m.p2_
       << ", q=" << m.q_ << " at n=" << n << ")";
    throw_invalid(os.str());
  }
  require(m.p1_ > m.q_ && m.p2_ > m.q_, "assortative ordering p1 > q and p2 > q required");
  return m;
}

Labeling Labeling::from_values(std::vector<int> values) {
  require(!values.empty(), "labeling must be nonempty");
  long long sum = 0;
  for (int v : values) {
    require(v == 1 || v == -1, "labeling entries must be +1 or -1");
    sum += v;
  }
  require(sum == 0, "labeling must be balanced");
  Labeling l;
  l.values_ = std::move(values);
  return l;
}

Labeling Labeling::first_half(int n) {
  require(n >= 2 && n % 2 == 0, "n must be even");
  std::vector<int> v(static_cast<std::size_t>(n), -1);
  std::fill(v.begin(), v.begin() + n / 2, 1);
  return from_values(std::move(v));
}

Labeling Labeling::swapped(int i, int j) const {
  Labeling l = *this;
  std::swap(l.values_[static_cast<std::size_t>(i)], l.values_[static_cast<std::size_t>(j)]);
  return l;
}

Labeling Labeling::flipped() const {
  Labeling l = *this;
  for (int& v : l.values_) v = -v;
  return l;
}

std::vector<int> Labeling::members(int sign) const {
  std::vector<int> out;
  out.reserve(values_.size() / 2);
  for (int u = 0; u < size(); ++u)
    if ((*this)[u] == sign) out.push_back(u);
  return out;
}

LabeledGraph::LabeledGraph(int n, std::vector<std::uint8_t> adjacency, Labeling truth)
    : n_(n), adjacency_(std::move(adjacency)), truth_(std::move(truth)) {
  require(n >= 2, "graph needs at least two vertices");
  require(adjacency_.size() == static_cast<std::size_t>(n) * n, "adjacency must be n x n");
  require(truth_.size() == n, "labeling length must equal n");
  for (int u = 0; u < n; ++u) {
    require((*this)(u, u) == 0, "adjacency diagonal must be zero");
    for (int v = u + 1; v < n; ++v) {
      const auto a = (*this)(u, v);
      require(a <= 1, "adjacency entries must be 0 or 1");
      require(a == (*this)(v, u), "adjacency must be symmetric");
    }
  }
}

LabeledGraph LabeledGraph::from_edges(int n, std::span<const std::pair<int, int>> edges,
                                      Labeling truth) {
  require(n >= 2, "graph needs at least two vertices");
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (auto [u, v] : edges) {
    require(u >= 0 && v >= 0 && u < n && v < n, "edge endpoint out of range");
    require(u != v, "self loops are not allowed");
    adj[static_cast<std::size_t>(u) * n + v] = 1;
    adj[static_cast<std::size_t>(v) * n + u] = 1;
  }
  return LabeledGraph(n, std::move(adj), std::move(truth));
}

long long LabeledGraph::num_edges() const {
  long long m = 0;
  for (int u = 0; u < n_; ++u) {
    auto r = row(u);
    for (int v = u + 1; v < n_; ++v) m += r[static_cast<std::size_t>(v)];
  }
  return m;
}

std::vector<std::pair<int, int>> LabeledGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

Eigen::MatrixXd LabeledGraph::adjacency_matrix() const {
  Eigen::MatrixXd a(n_, n_);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v) a(u, v) = (*this)(u, v);
  return a;
}

namespace {

void check_labeling(const LabeledGraph& g, const Labeling& sigma) {
  require(sigma.size() == g.n(), "labeling length does not match graph");
}

}  // namespace

long long z_objective(const LabeledGraph& g, const Labeling& sigma) {
  check_labeling(g, sigma);
  long long z = 0;
  for (int i = 0; i < g.n(); ++i) {
    auto r = g.row(i);
    long long acc = 0;
    for (int j = 0; j < g.n(); ++j) acc += r[static_cast<std::size_t>(j)] * sigma[j];
    z += acc * sigma[i];
  }
  return z;
}

SideDegrees side_degrees(const LabeledGraph& g, const Labeling& sigma) {
  check_labeling(g, sigma);
  SideDegrees d;
  d.plus.assign(static_cast<std::size_t>(g.n()), 0);
  d.minus.assign(static_cast<std::size_t>(g.n()), 0);
  for (int u = 0; u < g.n(); ++u) {
    auto r = g.row(u);
    int p = 0, m = 0;
    for (int v = 0; v < g.n(); ++v) {
      if (!r[static_cast<std::size_t>(v)]) continue;
      (sigma[v] > 0 ? p : m) += 1;
    }
    d.plus[static_cast<std::size_t>(u)] = p;
    d.minus[static_cast<std::size_t>(u)] = m;
  }
  return d;
}

// Moving i from + to - and j from - to + changes only terms touching i or j.
// The (i, j) term keeps its sign, so
//   delta = 4 [(minus_i - plus_i) + (plus_j - minus_j) - 2 A_ij].
long long swap_delta(const LabeledGraph& g, const SideDegrees& deg, int i, int j) {
  const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
  return 4LL * ((deg.minus[ui] - deg.plus[ui]) + (deg.plus[uj] - deg.minus[uj]) -
                2 * static_cast<int>(g(i, j)));
}

long long swap_delta(const LabeledGraph& g, const Labeling& sigma, int i, int j) {
  check_labeling(g, sigma);
  require(i >= 0 && j >= 0 && i < g.n() && j < g.n(), "vertex index out of range");
  require(sigma[i] == 1 && sigma[j] == -1, "swap needs sigma(i) = +1 and sigma(j) = -1");
  // O(n): only the two rows involved.
  int plus_i = 0, minus_i = 0, plus_j = 0, minus_j = 0;
  auto ri = g.row(i), rj = g.row(j);
  for (int v = 0; v < g.n(); ++v) {
    const auto uv = static_cast<std::size_t>(v);
    if (ri[uv]) (sigma[v] > 0 ? plus_i : minus_i) += 1;
    if (rj[uv]) (sigma[v] > 0 ? plus_j : minus_j) += 1;
  }
  return 4LL * ((minus_i - plus_i) + (plus_j - minus_j) - 2 * static_cast<int>(g(i, j)));
}

SwapScan scan_swaps(const LabeledGraph& g, const Labeling& sigma) {
  const SideDegrees deg = side_degrees(g, sigma);
  const auto plus = sigma.members(1);
  const auto minus = sigma.members(-1);
  SwapScan s;
  bool first = true;
  for (int i : plus) {
    for (int j : minus) {
      const long long d = swap_delta(g, deg, i, j);
      if (d > 0) ++s.improving_pairs;
      if (first || d > s.best_delta) {
        s.best_delta = d;
        s.best_i = i;
        s.best_j = j;
        first = false;
      }
    }
  }
  return s;
}

DegreeProfile degree_profile(const LabeledGraph& g, int u) {
  require(u >= 0 && u < g.n(), "vertex index out of range");
  const auto& sigma = g.truth();
  int c1 = 0, c2 = 0;
  auto r = g.row(u);
  for (int v = 0; v < g.n(); ++v)
    if (r[static_cast<std::size_t>(v)]) (sigma[v] > 0 ? c1 : c2) += 1;
  const double log_n = std::log(static_cast<double>(g.n()));
  return {c1 / log_n, c2 / log_n};
}

EdgeCounts edge_counts(const LabeledGraph& g, const Labeling& sigma) {
  check_labeling(g, sigma);
  EdgeCounts c;
  const long long half = g.n() / 2;
  c.h = half * (half - 1) / 2;
  c.r = half * half;
  for (int u = 0; u < g.n(); ++u) {
    auto r = g.row(u);
    for (int v = u + 1; v < g.n(); ++v) {
      if (!r[static_cast<std::size_t>(v)]) continue;
      if (sigma[u] != sigma[v])
        ++c.e12;
      else if (sigma[u] > 0)
        ++c.e1;
      else
        ++c.e2;
    }
  }
  return c;
}

EdgeCounts edge_counts(const LabeledGraph& g) { return edge_counts(g, g.truth()); }

}  // namespace sbmlab
