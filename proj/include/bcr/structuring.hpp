#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bcr/instance.hpp"
#include "bcr/solution.hpp"

namespace bcr {

// Replacement of x^r on (u,v),(v,w) by (u,w), by amount epsilon.
struct SplitOff {
  Vertex root = 0;
  Vertex u = 0;
  Vertex v = 0;
  Vertex w = 0;
  Rational epsilon;
};

struct Reduction {
  Vertex root = 0;
  Arc arc;
  Rational delta;
};

struct StructuringReport {
  std::size_t reroutes = 0;
  std::vector<SplitOff> splitoffs;
  std::vector<Reduction> reductions;
  Rational cost_before;
  Rational cost_after;
};

// Moves every z value off non-terminal roots by reversing a flow of value
// max_P z^r_P from an endpoint of the maximizing pair to r, then merging x^r
// into the root of that endpoint. Cost is unchanged. Throws InfeasibleInput
// when the flow does not exist.
BcrSolution reroute_steiner_roots(const BcrSolution& sol, const Instance& inst, std::size_t* reroutes = nullptr);

// True iff z is supported on terminal roots only.
bool z_on_terminals(const BcrSolution& sol, const Instance& inst);

// Largest epsilon by which x^r_(u,v) and x^r_(v,w) can be lowered and
// x^r_(u,w) raised while keeping every cut constraint of root r. A cut
// x^r(delta^+(U)) drops by epsilon exactly when v is in U and u, w are not, or
// when u, w are in U and v is not.
Rational splitoff_capacity(const BcrSolution& sol, const Instance& inst, Vertex root, Vertex u, Vertex v, Vertex w);

// Applies splitting-off until no candidate has positive capacity. Candidates
// are visited by root label, then v label, then (u,w) labels. Requires a
// metric instance; throws NotMetric on a violated triangle.
BcrSolution split_off(const BcrSolution& sol, const Instance& metric, std::vector<SplitOff>* log = nullptr);

// First candidate (in visiting order) admitting a positive split, if any.
std::optional<SplitOff> find_splitoff(const BcrSolution& sol, const Instance& metric);

// reroute_steiner_roots followed by split_off.
std::pair<BcrSolution, StructuringReport> well_structure(const BcrSolution& sol, const Instance& metric);

// Largest amount by which the single variable x^r_arc can be lowered while
// staying feasible.
Rational reduction_capacity(const BcrSolution& sol, const Instance& inst, Vertex root, Arc arc);

// Lowers single variables by their reduction capacity until none can be
// lowered. Variables are visited by root label, then arc labels.
BcrSolution fully_reduce(const BcrSolution& sol, const Instance& inst, std::vector<Reduction>* log = nullptr);

}  // namespace bcr
