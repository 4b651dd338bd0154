#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcr/rational.hpp"

namespace bcr {

// Index of a vertex inside one Instance. Labels are the stable identity across
// files; indices are only meaningful together with the instance they came from.
using Vertex = int;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  auto operator<=>(const Arc&) const = default;
  Arc reversed() const { return {head, tail}; }
};

// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  auto operator<=>(const Edge&) const = default;
};

// Unordered terminal pair, kept in input orientation for output.
struct Pair {
  Vertex s = 0;
  Vertex t = 0;

  bool contains(Vertex v) const { return s == v || t == v; }
  bool operator==(const Pair&) const = default;
};

// Undirected graph with nonnegative rational edge costs and an ordered list of
// terminal pairs. Vertices keep insertion order; pairs keep input order and are
// identified by their index.
class Instance {
 public:
  Instance() = default;

  // Throws InvalidInstance on duplicate or malformed labels.
  Vertex add_vertex(std::string label);

  // Parallel edges collapse to the minimum cost. Self-loops and negative
  // costs throw InvalidInstance.
  void add_edge(Vertex a, Vertex b, const Rational& cost);
  void add_edge(std::string_view a, std::string_view b, const Rational& cost);

  std::size_t add_pair(Vertex s, Vertex t);
  std::size_t add_pair(std::string_view s, std::string_view t);

  std::size_t num_vertices() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }
  std::optional<Vertex> find(std::string_view label) const;
  Vertex vertex(std::string_view label) const;  // throws InvalidInstance

  const std::map<Edge, Rational>& edges() const { return edges_; }
  const Rational* edge_cost(Vertex a, Vertex b) const;
  bool has_edge(Vertex a, Vertex b) const { return edge_cost(a, b) != nullptr; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

  // Both orientations of every edge, sorted.
  std::vector<Arc> arcs() const;

  const std::vector<Pair>& pairs() const { return pairs_; }

  // Same vertex labels (in order), same edges and costs, same pairs.
  bool operator==(const Instance& other) const;

  // Vertices sorted by label; the deterministic order used for candidate scans.
  std::vector<Vertex> vertices_by_label() const;

 private:
  std::vector<std::string> labels_;
  std::map<std::string, Vertex, std::less<>> index_;
  std::map<Edge, Rational> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Pair> pairs_;
};

// Connected components of the graph whose edges are the terminal pairs.
struct DemandGraph {
  // Components ordered by their smallest member label; members sorted by label.
  std::vector<std::vector<Vertex>> components;
  std::vector<std::size_t> component_of;

  bool is_trivial(std::size_t component) const { return components[component].size() == 1; }
  std::vector<std::size_t> nontrivial_components() const;
};

// Vertices that appear in at least one pair, ascending by index.
std::vector<Vertex> terminals(const Instance& inst);
std::vector<bool> terminal_mask(const Instance& inst);

DemandGraph demand_graph(const Instance& inst);

// True iff both instances induce the same demand-graph partition. Throws
// VertexMismatch when the underlying graphs differ.
bool same_representation(const Instance& a, const Instance& b);

// Complete graph of shortest-path distances plus one witness path per pair of
// mutually reachable vertices.
class MetricClosure {
 public:
  const Instance& instance() const { return closure_; }
  const Rational& distance(Vertex a, Vertex b) const;
  bool reachable(Vertex a, Vertex b) const;
  // Vertex sequence a, ..., b of a shortest path in the base graph.
  std::vector<Vertex> path(Vertex a, Vertex b) const;
  // Base-graph edges of that path.
  std::vector<Edge> path_edges(Vertex a, Vertex b) const;

 private:
  friend MetricClosure metric_closure(const Instance& inst);
  Instance closure_;
  std::size_t n_ = 0;
  std::vector<std::optional<Rational>> dist_;
  std::vector<Vertex> next_;
};

// Throws Disconnected when two vertices of a common demand component have no
// connecting path.
MetricClosure metric_closure(const Instance& inst);

// Line-based text format: "vertices ...", "edge u v cost", "pair s t".
Instance parse_instance(std::istream& in);
Instance parse_instance_string(std::string_view text);
void write_instance(std::ostream& out, const Instance& inst);
std::string instance_to_string(const Instance& inst);

}  // namespace bcr
