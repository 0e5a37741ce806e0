/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <iosfwd>
#include <string>

#include "sbmlab/core.hpp"

namespace sbmlab {

// Text format:
//   n m
//   u v          (m lines, 1-based, u < v)
//   s_1 ... s_n  (labeling, +1/-1)
LabeledGraph read_graph(std::istream& in);
void write_graph(const LabeledGraph& g, std::ostream& out);

/// File variants raise ErrorCode::Io with the path on open/write failures.
LabeledGraph read_graph_file(const std::string& path);
void write_graph_file(const LabeledGraph& g, const std::string& path);

}  // namespace sbmlab
