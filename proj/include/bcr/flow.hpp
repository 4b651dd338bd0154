#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bcr/rational.hpp"

namespace bcr {

// Directed network with nonnegative rational capacities over nodes 0..n-1.
// Parallel arcs are merged by summing their capacities.
class FlowNetwork {
 public:
  FlowNetwork() = default;
  explicit FlowNetwork(std::size_t num_nodes) : num_nodes_(num_nodes) {}

  int add_node() { return static_cast<int>(num_nodes_++); }
  std::size_t num_nodes() const { return num_nodes_; }

  // Throws std::invalid_argument on negative capacity or bad endpoints.
  void add_arc(int tail, int head, const Rational& capacity);

  const std::map<std::pair<int, int>, Rational>& arcs() const { return arcs_; }

 private:
  std::size_t num_nodes_ = 0;
  std::map<std::pair<int, int>, Rational> arcs_;
};

struct FlowResult {
  Rational value;
  // Positive arc flows only. Antiparallel flow is cancelled, so at most one of
  // (u,v) and (v,u) carries flow.
  std::map<std::pair<int, int>, Rational> arc_flows;
  // Nodes reachable from the sources in the final residual network. For a
  // maximum flow this is the inclusion-minimal minimum cut.
  std::vector<int> min_cut_side;
};

// Shortest-augmenting-path maximum flow from the source set to the sink set.
// With a limit, augmentation stops once the flow value reaches it; a limit
// above the maximum throws LimitInfeasible. Half-integral capacities give
// half-integral flows.
FlowResult max_flow(const FlowNetwork& net, std::span<const int> sources, std::span<const int> sinks,
                    const std::optional<Rational>& limit = std::nullopt);

struct MinCut {
  Rational value;
  std::vector<int> source_side;
};

MinCut min_cut(const FlowNetwork& net, std::span<const int> sources, std::span<const int> sinks);

}  // namespace bcr
