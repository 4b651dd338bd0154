#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "bcr/instance.hpp"
#include "bcr/solution.hpp"

namespace bcr {

struct DensityResult {
  std::vector<Vertex> set;  // ascending by index
  Rational density;
  std::optional<Edge> anchor;  // anchor pair whose search produced the set
};

// x(E[W]) / (|W| - 1), where x(E[W]) sums every root's arcs inside W.
// Throws TooSmall when W has fewer than two distinct vertices.
Rational density_of(const BcrSolution& sol, std::span<const Vertex> set);

// Maximum-density set among those containing both anchor endpoints, found by
// Dinkelbach iteration with one minimum cut per step.
DensityResult anchored_densest(const BcrSolution& sol, const Instance& inst, Edge anchor);

// Global maximum over all anchors on support edges. Among anchors reaching
// the maximum, the smaller set wins, then the lexicographically smaller
// sorted label list. Throws NoSupport if x is identically zero.
DensityResult densest_subgraph(const BcrSolution& sol, const Instance& inst);

// Exhaustive search over subsets of the support vertices. Ties go to the
// smaller set, then the lexicographically smaller sorted label list. Throws
// TooLarge above max_support support vertices and NoSupport if x is zero.
DensityResult densest_subgraph_bruteforce(const BcrSolution& sol, const Instance& inst,
                                          std::size_t max_support = 16);

// Multigraph with 2 * sum_r (x^r_(v,w) + x^r_(w,v)) copies of {v,w}.
struct ProjectionMultigraph {
  std::map<Edge, std::int64_t> multiplicity;
  std::vector<std::int64_t> degree;

  // Sum of multiplicities inside W divided by 2(|W| - 1).
  Rational density(std::span<const Vertex> set) const;
};

// Throws NotHalfIntegral unless every summed edge value is a multiple of 1/2.
ProjectionMultigraph projection_multigraph(const BcrSolution& sol, std::size_t num_vertices);

enum class VertexClass { Nonsupport, LowDegree, HighDegree };

// Support: degree >= 1. High degree: degree >= 3.
std::vector<VertexClass> classify_vertices(const ProjectionMultigraph& pm);

// First support vertex that has degree below two, or that has no parallel
// edge pair and is neither high-degree nor adjacent to a high-degree vertex.
std::optional<Vertex> find_structure_violation(const ProjectionMultigraph& pm);

}  // namespace bcr
