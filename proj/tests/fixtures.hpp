#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "bcr/generators.hpp"

namespace fixture {

// Random half-integral instances whose demand graph has one nontrivial
// component with at least min_terminals terminals: 1 to 3 pairs on 6 to 8
// vertices, rejecting the rest.
inline std::vector<bcr::Generated> single_component(std::size_t count, std::size_t min_terminals = 2,
                                                    std::uint64_t first_seed = 1) {
  std::vector<bcr::Generated> out;
  for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
    auto g = bcr::gen_random_halfintegral(seed, 6 + static_cast<int>(seed % 3), bcr::Rational(3, 10),
                                          1 + static_cast<int>(seed % 3));
    if (bcr::demand_graph(g.instance).nontrivial_components().size() != 1) continue;
    if (bcr::terminals(g.instance).size() < min_terminals) continue;
    out.push_back(std::move(g));
  }
  return out;
}

inline std::set<bcr::Edge> pair_set(const bcr::Instance& inst) {
  std::set<bcr::Edge> out;
  for (const auto& p : inst.pairs()) out.insert(bcr::Edge::of(p.s, p.t));
  return out;
}

// Same graph with the terminals joined by a star from some terminal, or by a
// path in index order, whichever first differs from the given pairs. Returns
// a copy of the input when there are only two terminals.
inline bcr::Instance other_representation(const bcr::Instance& inst) {
  auto terms = bcr::terminals(inst);
  auto blank = [&] {
    bcr::Instance out;
    for (const auto& l : inst.labels()) out.add_vertex(l);
    for (const auto& [e, c] : inst.edges()) out.add_edge(e.u, e.v, c);
    return out;
  };
  const auto original = pair_set(inst);
  for (bcr::Vertex centre : terms) {
    bcr::Instance star = blank();
    for (bcr::Vertex t : terms) {
      if (t != centre) star.add_pair(centre, t);
    }
    if (pair_set(star) != original) return star;
  }
  bcr::Instance path = blank();
  for (std::size_t i = 1; i < terms.size(); ++i) path.add_pair(terms[i - 1], terms[i]);
  return path;
}

}  // namespace fixture
