#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcr/flow.hpp"
#include "bcr/instance.hpp"
#include "bcr/rational.hpp"

namespace bcr {

using ArcValues = std::map<Arc, Rational>;

// Sparse Forest-BCR assignment. x is indexed by (root, arc), z by
// (root, pair index). Zero entries are never stored.
struct BcrSolution {
  std::map<Vertex, ArcValues> x;
  std::map<Vertex, std::map<std::size_t, Rational>> z;

  Rational x_at(Vertex root, Arc arc) const;
  Rational z_at(Vertex root, std::size_t pair) const;
  void set_x(Vertex root, Arc arc, const Rational& value);
  void add_x(Vertex root, Arc arc, const Rational& delta);
  void set_z(Vertex root, std::size_t pair, const Rational& value);
  void add_z(Vertex root, std::size_t pair, const Rational& delta);

  // Roots carrying any x or z value, ascending.
  std::set<Vertex> roots() const;
  const ArcValues& x_of(Vertex root) const;

  bool operator==(const BcrSolution&) const = default;
};

struct TreeBcrSolution {
  Vertex root = 0;
  ArcValues x;

  bool operator==(const TreeBcrSolution&) const = default;
};

struct DualEntry {
  Vertex root = 0;
  std::vector<Vertex> set;  // sorted, duplicate-free
  std::size_t pair = 0;
  Rational value;
};

struct DualCertificate {
  std::map<std::size_t, Rational> alpha;
  std::vector<DualEntry> y;
};

enum class VerdictKind {
  Feasible,
  ViolatedCut,
  BadZSum,
  Negative,
  UnknownArc,
  EdgeOverload,
  AlphaUncovered,
  InvalidEntry,
};

// Outcome of a feasibility check. Failing verdicts carry a witness so the
// failure can be reproduced.
struct Verdict {
  Verdict() = default;
  explicit Verdict(VerdictKind k) : kind(k) {}

  VerdictKind kind = VerdictKind::Feasible;
  std::optional<Vertex> root;
  std::optional<std::size_t> pair;
  std::optional<Arc> arc;
  std::vector<Vertex> cut;
  Rational lhs;    // left-hand side of the failing constraint
  Rational rhs;    // right-hand side of the failing constraint
  Rational value;  // dual objective for a feasible dual

  bool feasible() const { return kind == VerdictKind::Feasible; }
  std::string describe(const Instance& inst) const;
};

// Throws UnknownArc when some arc with a nonzero value is not an instance edge.
Rational cost(const BcrSolution& sol, const Instance& inst);
Rational cost(const TreeBcrSolution& sol, const Instance& inst);
Rational cost(const ArcValues& x, const Instance& inst);

// Capacity network over the instance vertices with capacities x.
FlowNetwork network_of(const ArcValues& x, std::size_t num_vertices);

// Minimum value of x(delta^+(U)) over U containing all sources and no sink.
MinCut arc_min_cut(const ArcValues& x, std::size_t num_vertices, std::span<const Vertex> sources,
                   std::span<const Vertex> sinks);

// For every root r and pair P with z^r_P > 0 and every p in P other than r,
// the min cut from p to r under x^r must be at least z^r_P. A violation is
// reported with the inclusion-minimal violating set.
Verdict verify_primal(const BcrSolution& sol, const Instance& inst);

// Direct summation over the explicit y entries for every (root, arc) and
// every (pair, root) with root ranging over all vertices.
Verdict verify_dual(const DualCertificate& cert, const Instance& inst);

// Every terminal other than the root needs min cut at least 1 into the root.
Verdict verify_tree_bcr(const TreeBcrSolution& sol, std::span<const Vertex> terminals, const Instance& inst);

std::map<Edge, Rational> undirected_projection(const BcrSolution& sol);

bool is_half_integral(const BcrSolution& sol);

// Text formats. Pair references are endpoint labels in either order; the k-th
// z line for one root and one endpoint set refers to the k-th pair with those
// endpoints, likewise the k-th alpha line. y entries refer to the first pair
// with the given endpoints.
BcrSolution parse_solution(std::istream& in, const Instance& inst);
BcrSolution parse_solution_string(std::string_view text, const Instance& inst);
void write_solution(std::ostream& out, const BcrSolution& sol, const Instance& inst);
std::string solution_to_string(const BcrSolution& sol, const Instance& inst);

TreeBcrSolution parse_tree_solution(std::istream& in, const Instance& inst);
void write_tree_solution(std::ostream& out, const TreeBcrSolution& sol, const Instance& inst);
std::string tree_solution_to_string(const TreeBcrSolution& sol, const Instance& inst);

DualCertificate parse_dual(std::istream& in, const Instance& inst);
void write_dual(std::ostream& out, const DualCertificate& cert, const Instance& inst);
std::string dual_to_string(const DualCertificate& cert, const Instance& inst);

}  // namespace bcr
