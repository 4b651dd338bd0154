#pragma once

#include <optional>
#include <vector>

#include "bcr/instance.hpp"
#include "bcr/solution.hpp"

namespace bcr {

// Spanning arborescence of the single nontrivial demand component, found by
// breadth-first search from the root over pairs in input order. `order` lists
// the terminals so that every arc goes from an earlier to a later entry.
struct Arborescence {
  Vertex root = 0;
  std::vector<Vertex> order;
  std::vector<Arc> arcs;
};

// The root defaults to the terminal of the nontrivial component with the
// smallest label. Throws NotSteinerTree unless exactly one demand component
// is nontrivial, and InvalidInstance if the root lies outside it.
Arborescence build_arborescence(const Instance& inst, std::optional<Vertex> root = std::nullopt);

struct SourceReorientation {
  Vertex source = 0;
  // Indexed like Arborescence::order.
  std::vector<Rational> lambda;
  std::vector<Rational> mu;
  std::map<Arc, Rational> flow;
  ArcValues reoriented;
};

// lambda_i is the largest z^w_P over pairs meeting the first i+1 terminals and
// mu_i its increment. A flow sending mu_i from every terminal other than w to
// w under capacities x^w is reversed inside x^w. Throws FlowShortfall when the
// supplies cannot all be routed.
SourceReorientation reorient_source(const BcrSolution& sol, const Instance& inst, Vertex w,
                                    const Arborescence& arb);

// Sum of the reoriented x^w over all w, rooted at the arborescence root.
TreeBcrSolution to_tree_bcr(const BcrSolution& sol, const Instance& inst, std::optional<Vertex> root = std::nullopt);

}  // namespace bcr
