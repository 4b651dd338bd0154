#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bcr/errors.hpp"
#include "bcr/forest.hpp"
#include "bcr/instance.hpp"
#include "bcr/solution.hpp"

namespace bcr {

// Minimum spanning tree of the complete metric graph induced by W (Kruskal,
// ties by cost then label pair). Throws TooSmall for |W| < 2 and Disconnected
// if W is not connected in the graph.
std::pair<std::vector<Edge>, Rational> mst_on(const Instance& metric, std::span<const Vertex> set);

struct Contraction {
  Instance instance;
  BcrSolution solution;
  // Old vertex index -> new vertex index; members of W map to `merged`.
  std::vector<Vertex> vertex_map;
  Vertex merged = 0;
  // Each contracted edge -> the cheapest uncontracted edge it came from.
  std::map<Edge, Edge> edge_origin;
};

// Merges W into one vertex with the given label. Vertices outside W keep
// their order and the merged vertex comes last. Pairs inside W are dropped,
// pairs with one endpoint in W are redirected, and x, z are summed along the
// vertex map with arcs inside W dropped. Parallel edges keep the minimum cost.
Contraction contract(const Instance& inst, const BcrSolution& sol, std::span<const Vertex> set,
                     const std::string& label);

struct RoundingLevel {
  std::size_t vertex_count = 0;
  std::vector<std::string> set;  // labels of W
  std::string merged_label;
  Rational density;
  Rational mst_cost;
  Rational inside_cost;      // c(x restricted to arcs inside W), closure costs
  Rational structured_cost;  // c(x) after well-structuring
  Rational contracted_cost;  // c(x) after contracting W
  std::size_t reroutes = 0;
  std::size_t splitoffs = 0;
};

struct RoundingTrace {
  std::vector<RoundingLevel> levels;  // outermost level first
  EdgeSet unpruned;
  Rational unpruned_cost;
  EdgeSet forest;
  Rational total_cost;
};

struct RoundingResult {
  EdgeSet forest;
  RoundingTrace trace;
};

// Recursive densest-subgraph contraction rounding. Throws Infeasible if the
// solution fails verify_primal.
RoundingResult round_solution(const BcrSolution& sol, const Instance& inst);

std::string format_trace(const RoundingTrace& trace);

class RatioExceeded : public Error {
 public:
  RatioExceeded(const std::string& what, RoundingTrace trace) : Error(what), trace_(std::move(trace)) {}
  const RoundingTrace& trace() const { return trace_; }

 private:
  RoundingTrace trace_;
};

struct RatioReport {
  Rational lp_cost;
  Rational rounded_cost;
  Rational ratio;
  RoundingResult result;
};

// Rounds and compares against the LP cost (0/0 counts as ratio 1). For a
// half-integral solution a ratio above 16/9 throws RatioExceeded.
RatioReport check_ratio(const BcrSolution& sol, const Instance& inst);

}  // namespace bcr
