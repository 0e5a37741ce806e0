/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sbmlab {

/// Parameters of SBM(n, alpha1, alpha2, beta) with p_i = alpha_i log(n)/n and
/// q = beta log(n)/n. Construction validates n even, n >= 4, all probabilities
/// in [0, 1] and the assortative ordering p1 > q, p2 > q.
class ModelParams {
 public:
  static ModelParams create(int n, double alpha1, double alpha2, double beta);

  int n() const { return n_; }
  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  double beta() const { return beta_; }
  double p1() const { return p1_; }
  double p2() const { return p2_; }
  double q() const { return q_; }
  double log_n() const { return log_n_; }

 private:
  ModelParams() = default;
  int n_ = 0;
  double alpha1_ = 0, alpha2_ = 0, beta_ = 0;
  double p1_ = 0, p2_ = 0, q_ = 0;
  double log_n_ = 0;
};

/// Balanced +-1 community labeling. +1 marks C1, -1 marks C2.
class Labeling {
 public:
  /// Throws InvalidInput unless every entry is +-1 and the entries sum to zero.
  static Labeling from_values(std::vector<int> values);
  /// C1 = {0, ..., n/2 - 1}.
  static Labeling first_half(int n);

  int size() const { return static_cast<int>(values_.size()); }
  int operator[](int u) const { return values_[static_cast<std::size_t>(u)]; }
  std::span<const int> values() const { return values_; }
  bool in_c1(int u) const { return (*this)[u] > 0; }

  /// Labeling with the entries at i and j exchanged.
  Labeling swapped(int i, int j) const;
  /// Global sign flip.
  Labeling flipped() const;
  /// Vertices labeled +1 (resp. -1) in increasing index order.
  std::vector<int> members(int sign) const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<int> values_;
};

/// Dense symmetric 0/1 adjacency matrix with zero diagonal plus the planted labeling.
class LabeledGraph {
 public:
  LabeledGraph(int n, std::vector<std::uint8_t> adjacency, Labeling truth);
  static LabeledGraph from_edges(int n, std::span<const std::pair<int, int>> edges,
                                 Labeling truth);

  int n() const { return n_; }
  bool has_edge(int u, int v) const {
    return adjacency_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }
  std::uint8_t operator()(int u, int v) const {
    return adjacency_[static_cast<std::size_t>(u) * n_ + v];
  }
  std::span<const std::uint8_t> row(int u) const {
    return {adjacency_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)};
  }
  const Labeling& truth() const { return truth_; }
  long long num_edges() const;
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;
  Eigen::MatrixXd adjacency_matrix() const;

 private:
  int n_;
  std::vector<std::uint8_t> adjacency_;
  Labeling truth_;
};

/// Rescaled degree pair (degree into C1, degree into C2) / log n.
struct DegreeProfile {
  double d1 = 0;
  double d2 = 0;
};

struct EdgeCounts {
  long long e1 = 0;   // inside C1
  long long e2 = 0;   // inside C2
  long long e12 = 0;  // across
  long long h = 0;    // C(n/2, 2)
  long long r = 0;    // (n/2)^2
  long long total() const { return e1 + e2 + e12; }
};

/// Per-vertex neighbor counts into the +1 side and the -1 side of a labeling.
struct SideDegrees {
  std::vector<int> plus;
  std::vector<int> minus;
};

/// z(sigma) = sum over ordered pairs (i, j) of A_ij sigma_i sigma_j.
long long z_objective(const LabeledGraph& g, const Labeling& sigma);

SideDegrees side_degrees(const LabeledGraph& g, const Labeling& sigma);

/// z(sigma_{i<->j}) - z(sigma) for sigma_i = +1, sigma_j = -1, in O(n).
long long swap_delta(const LabeledGraph& g, const Labeling& sigma, int i, int j);
/// Same, from precomputed side degrees, in O(1).
long long swap_delta(const LabeledGraph& g, const SideDegrees& deg, int i, int j);

struct SwapScan {
  long long best_delta = 0;
  int best_i = -1;
  int best_j = -1;
  long long improving_pairs = 0;
  bool improving() const { return best_delta > 0; }
};

/// Scans every (i in C1, j in C2) pair of the given labeling for the largest swap delta.
SwapScan scan_swaps(const LabeledGraph& g, const Labeling& sigma);

/// Degree profile of u with respect to the planted labeling.
DegreeProfile degree_profile(const LabeledGraph& g, int u);

EdgeCounts edge_counts(const LabeledGraph& g);
EdgeCounts edge_counts(const LabeledGraph& g, const Labeling& sigma);

}  // namespace sbmlab
