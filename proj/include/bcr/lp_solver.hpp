#pragma once

#include <cstddef>
#include <span>

#include "bcr/instance.hpp"
#include "bcr/solution.hpp"

namespace bcr {

enum class LpStatus {
  Optimal,
  // Separation rounds ran out; value is the restricted-LP bound and the
  // solution may violate cuts not yet added.
  IterationCapExceeded,
};

struct LpStats {
  std::size_t variables = 0;
  std::size_t rounds = 0;
  std::size_t cuts = 0;
  std::size_t pivots = 0;
};

struct ForestLpResult {
  LpStatus status = LpStatus::Optimal;
  Rational value;
  BcrSolution solution;
  LpStats stats;
};

struct TreeLpResult {
  LpStatus status = LpStatus::Optimal;
  Rational value;
  TreeBcrSolution solution;
  LpStats stats;
};

inline constexpr std::size_t kDefaultRoundCap = 500;
inline constexpr std::size_t kDefaultVariableBound = 2500;

// Cutting-plane optimum of the forest relaxation with roots restricted to
// terminals. Each round solves the restricted LP exactly by dual simplex
// (Bland's rule) and adds, for every (root, pair) pair, the most violated cut
// found by a min-cut from each pair member to the root. Throws TooLarge when
// the variable count exceeds variable_bound and Disconnected when some pair
// cannot be connected.
ForestLpResult solve_forest_bcr(const Instance& inst, std::size_t round_cap = kDefaultRoundCap,
                                std::size_t variable_bound = kDefaultVariableBound);

// Same scheme for the tree relaxation: x(delta^+(U)) >= 1 for every U that
// avoids r0 and meets the terminal set.
TreeLpResult solve_tree_bcr(const Instance& inst, std::span<const Vertex> terminals, Vertex r0,
                            std::size_t round_cap = kDefaultRoundCap,
                            std::size_t variable_bound = kDefaultVariableBound);

}  // namespace bcr
