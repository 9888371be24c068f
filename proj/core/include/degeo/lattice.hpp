// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "degeo/common.hpp"

namespace degeo {

/// Undirected weighted edge, 0-based vertex indices with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;
};

/// Finite simple graph. Edges are normalized to i < j and validated on
/// construction: no self-loops, no duplicates, finite non-negative weights.
class Graph {
 public:
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
};

/// Names accepted by named_graph(), in catalog order.
std::vector<std::string> named_graph_catalog();

/// Unit-weight fixture graphs with a fixed vertex numbering (see README).
/// Throws DomainError listing the catalog for unknown names.
Graph named_graph(std::string_view name);

/// Text format: first non-comment line `M`, then `i j [w]` per edge with
/// 1-based indices; lines starting with `#` are comments.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& graph);

/// One-particle operator h (M x M, exactly symmetric).
struct OneBodyOperator {
  Matrix h;
};

enum class Gauge { Raw, SumZero };

/// Scalar one-body potential. With Gauge::SumZero the entries sum to zero.
struct Potential {
  Vector v;
  Gauge gauge = Gauge::Raw;

  static Potential raw(Vector values) { return {std::move(values), Gauge::Raw}; }
  /// Shifts by a constant so the entries sum to zero.
  static Potential sum_zero(Vector values);
  /// Throws DomainError if a SumZero potential does not sum to zero (1e-12).
  void validate() const;
};

/// Weighted graph Laplacian D - A.
OneBodyOperator laplacian(const Graph& graph);

/// h + diag(v).
OneBodyOperator add_potential(const OneBodyOperator& h, const Potential& v);

}  // namespace degeo
