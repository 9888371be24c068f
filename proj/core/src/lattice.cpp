// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace degeo {

Graph::Graph(int vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count) {
  if (vertex_count < 1) {
    throw DomainError("graph needs at least one vertex, got " + std::to_string(vertex_count));
  }
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= vertex_count) {
      throw DomainError("edge (" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) +
                        ") out of range for M=" + std::to_string(vertex_count));
    }
    if (e.i == e.j) throw DomainError("self-loop at vertex " + std::to_string(e.i + 1));
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw DomainError("edge weights must be finite and non-negative");
    }
    if (!seen.emplace(e.i, e.j).second) {
      throw DomainError("duplicate edge (" + std::to_string(e.i + 1) + "," +
                        std::to_string(e.j + 1) + ")");
    }
  }
  edges_ = std::move(edges);
}

namespace {

using Point = std::array<double, 3>;

// Connects every pair of points at the minimal pairwise distance. The point
// order fixes the vertex numbering.
Graph nearest_neighbour_graph(const std::vector<Point>& pts) {
  const int m = static_cast<int>(pts.size());
  auto dist = [&](int a, int b) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += (pts[a][c] - pts[b][c]) * (pts[a][c] - pts[b][c]);
    return std::sqrt(s);
  };
  double dmin = std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) dmin = std::min(dmin, dist(a, b));
  std::vector<Edge> edges;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (std::abs(dist(a, b) - dmin) < 1e-9 * dmin) edges.push_back({a, b, 1.0});
  return Graph(m, std::move(edges));
}

Graph from_pairs(int m, std::initializer_list<std::pair<int, int>> one_based) {
  std::vector<Edge> edges;
  for (auto [a, b] : one_based) edges.push_back({a - 1, b - 1, 1.0});
  return Graph(m, std::move(edges));
}

Graph complete_graph(int m) {
  std::vector<Edge> edges;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) edges.push_back({a, b, 1.0});
  return Graph(m, std::move(edges));
}

std::vector<Point> octahedron_points() {
  return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

std::vector<Point> cube_points() {
  std::vector<Point> pts;
  for (int k = 0; k < 8; ++k) {
    pts.push_back({double((k >> 2) & 1), double((k >> 1) & 1), double(k & 1)});
  }
  return pts;
}

std::vector<Point> cuboctahedron_points() {
  std::vector<Point> pts;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) {
      pts.push_back({a, b, 0});
      pts.push_back({a, 0, b});
      pts.push_back({0, a, b});
    }
  return pts;
}

std::vector<Point> icosahedron_points() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Point> pts;
  for (double a : {1.0, -1.0})
    for (double b : {phi, -phi}) pts.push_back({0, a, b});
  for (double a : {1.0, -1.0})
    for (double b : {phi, -phi}) pts.push_back({a, b, 0});
  for (double a : {phi, -phi})
    for (double b : {1.0, -1.0}) pts.push_back({a, 0, b});
  return pts;
}

std::vector<Point> dodecahedron_points() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double inv = 1.0 / phi;
  std::vector<Point> pts;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0})
      for (double c : {1.0, -1.0}) pts.push_back({a, b, c});
  for (double a : {inv, -inv})
    for (double b : {phi, -phi}) pts.push_back({0, a, b});
  for (double a : {inv, -inv})
    for (double b : {phi, -phi}) pts.push_back({a, b, 0});
  for (double a : {phi, -phi})
    for (double b : {inv, -inv}) pts.push_back({a, 0, b});
  return pts;
}

}  // namespace

std::vector<std::string> named_graph_catalog() {
  return {"triangle", "square",        "tetrahedron", "claw",        "diamond",
          "octahedron", "cube", "cuboctahedron", "icosahedron", "dodecahedron"};
}

Graph named_graph(std::string_view name) {
  if (name == "triangle") return complete_graph(3);
  if (name == "square") return from_pairs(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  if (name == "tetrahedron") return complete_graph(4);
  if (name == "claw") return from_pairs(4, {{1, 2}, {1, 3}, {1, 4}});
  if (name == "diamond") return from_pairs(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
  if (name == "octahedron") return nearest_neighbour_graph(octahedron_points());
  if (name == "cube") return nearest_neighbour_graph(cube_points());
  if (name == "cuboctahedron") return nearest_neighbour_graph(cuboctahedron_points());
  if (name == "icosahedron") return nearest_neighbour_graph(icosahedron_points());
  if (name == "dodecahedron") return nearest_neighbour_graph(dodecahedron_points());

  std::string msg = "unknown graph '" + std::string(name) + "'; valid names:";
  for (const auto& n : named_graph_catalog()) msg += " " + n;
  throw DomainError(msg);
}

Graph read_graph(std::istream& in) {
  std::string line;
  int m = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (m < 0) {
      if (!(ls >> m)) throw DomainError("graph file: expected vertex count on line " + std::to_string(line_no));
      continue;
    }
    int i = 0, j = 0;
    double w = 1.0;
    if (!(ls >> i >> j)) {
      throw DomainError("graph file: malformed edge on line " + std::to_string(line_no));
    }
    if (!(ls >> w)) w = 1.0;
    edges.push_back({i - 1, j - 1, w});
  }
  if (m < 0) throw DomainError("graph file: missing vertex count");
  return Graph(m, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << graph.vertex_count() << '\n';
  out << std::setprecision(17);
  for (const auto& e : graph.edges()) out << e.i + 1 << ' ' << e.j + 1 << ' ' << e.weight << '\n';
}

Potential Potential::sum_zero(Vector values) {
  if (values.size() > 0) values.array() -= values.mean();
  return {std::move(values), Gauge::SumZero};
}

void Potential::validate() const {
  if (gauge == Gauge::SumZero && std::abs(v.sum()) > 1e-12) {
    throw DomainError("sum-zero potential sums to " + std::to_string(v.sum()));
  }
}

OneBodyOperator laplacian(const Graph& graph) {
  const int m = graph.vertex_count();
  Matrix h = Matrix::Zero(m, m);
  for (const auto& e : graph.edges()) {
    h(e.i, e.i) += e.weight;
    h(e.j, e.j) += e.weight;
    h(e.i, e.j) -= e.weight;
    h(e.j, e.i) -= e.weight;
  }
  return {std::move(h)};
}

OneBodyOperator add_potential(const OneBodyOperator& h, const Potential& v) {
  if (v.v.size() != h.h.rows()) {
    throw DomainError("potential has " + std::to_string(v.v.size()) + " entries, operator is " +
                      std::to_string(h.h.rows()) + "x" + std::to_string(h.h.rows()));
  }
  OneBodyOperator out = h;
  out.h.diagonal() += v.v;
  return out;
}

}  // namespace degeo
