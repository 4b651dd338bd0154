#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "bcr/instance.hpp"

namespace bcr {

using EdgeSet = std::set<Edge>;

struct ForestVerdict {
  bool feasible = true;
  std::optional<std::size_t> unconnected_pair;

  std::string describe(const Instance& inst) const;
};

// Union-find connectivity of every pair. Throws UnknownEdge for an edge that
// is not in the instance.
ForestVerdict check_forest(const EdgeSet& edges, const Instance& inst);

Rational forest_cost(const EdgeSet& edges, const Instance& inst);

// Minimum-cost feasible edge subset by exhaustive search. Among optimal
// subsets the lexicographically smallest label-sorted edge list wins. Throws
// TooLarge above edge_cap edges and Disconnected if no subset is feasible.
std::pair<Rational, EdgeSet> brute_force_opt(const Instance& inst, std::size_t edge_cap = 20);

// Inclusion-minimal feasible subset: edges are tried for removal by
// descending cost, then by label order.
EdgeSet prune(const EdgeSet& edges, const Instance& inst);

// Lines "edge <u> <v>".
EdgeSet parse_forest(std::istream& in, const Instance& inst);
void write_forest(std::ostream& out, const EdgeSet& edges, const Instance& inst);
std::string forest_to_string(const EdgeSet& edges, const Instance& inst);

}  // namespace bcr
