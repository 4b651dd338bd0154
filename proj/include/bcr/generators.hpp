#pragma once

#include <cstdint>

#include "bcr/instance.hpp"
#include "bcr/solution.hpp"

namespace bcr {

struct Generated {
  Instance instance;
  BcrSolution solution;
};

struct GeneratedWithDual {
  Instance instance;
  BcrSolution solution;
  DualCertificate dual;
};

// Vertices s1..sq, v1..vq, t1..tq; unit edges {s_i,v_j} and {v_i,t_j}; pairs
// {s_i,t_i} then {v_i,v_{i+1}}. The solution routes 1/q from s_i through every
// v_j into root t_i and has cost 2q. Throws std::invalid_argument for q < 1.
Generated gen_lower_bound(int q);

enum class GadgetRep { P1, P2 };

// 19-vertex unit-cost graph with terminals a1..a3, b1, b2, ..., e1, e2 and
// Steiner vertices s1..s8. P1 pairs a1a2 and a2a3, P2 pairs a1a2 and a1a3;
// both add b1b2, c1c2, d1d2, e1e2. Primal and dual both have value 12 (P1)
// and 13 (P2). Dual entries for every root are images of those for b1, a1
// and a2 under the graph symmetries.
GeneratedWithDual gen_gadget(GadgetRep rep);

// Eight-vertex example with pairs a1a2, b1b2, c1c2, Steiner vertices s1, s2 and
// a half-integral solution of cost 5.
Generated gen_figure1();

// Seeded connected graph on n vertices (labels v1..vn): a random spanning tree
// plus each other vertex pair as an edge with probability edge_density; costs
// 1..10; pair_count distinct random pairs. The solution averages two integral
// solutions, each orienting a random spanning tree's minimal subtree per
// demand component into a random terminal of that component. Throws
// std::invalid_argument for n < 4 and GenerationFailed when distinct pairs
// cannot be drawn.
Generated gen_random_halfintegral(std::uint64_t seed, int n, const Rational& edge_density, int pair_count);

}  // namespace bcr
