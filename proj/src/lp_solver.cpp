#include "bcr/lp_solver.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "bcr/disjoint_sets.hpp"
#include "bcr/errors.hpp"
#include "simplex.hpp"

namespace bcr {

namespace {

using detail::DualSimplex;
using detail::SparseRow;

DisjointSets components_of(const Instance& inst) {
  DisjointSets sets(inst.num_vertices());
  for (const auto& [e, c] : inst.edges()) sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
  return sets;
}

void require_connected(DisjointSets& sets, const Instance& inst, Vertex a, Vertex b) {
  if (!sets.same(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) {
    throw Disconnected("'" + inst.label(a) + "' and '" + inst.label(b) + "' are not connected");
  }
}

// Arcs of `arcs` leaving the vertex set marked in `inside`.
std::vector<std::size_t> leaving_arcs(const std::vector<Arc>& arcs, const std::vector<char>& inside) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (inside[static_cast<std::size_t>(arcs[i].tail)] && !inside[static_cast<std::size_t>(arcs[i].head)]) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<char> mask_of(std::size_t n, std::span<const int> set) {
  std::vector<char> m(n, 0);
  for (int v : set) m.at(static_cast<std::size_t>(v)) = 1;
  return m;
}

}  // namespace

ForestLpResult solve_forest_bcr(const Instance& inst, std::size_t round_cap, std::size_t variable_bound) {
  ForestLpResult result;
  result.value = 0;
  const auto& pairs = inst.pairs();
  if (pairs.empty()) return result;

  DisjointSets sets = components_of(inst);
  for (const auto& p : pairs) require_connected(sets, inst, p.s, p.t);

  const std::vector<Vertex> roots = terminals(inst);
  const std::vector<Arc> arcs = inst.arcs();
  const std::size_t n = inst.num_vertices();
  const std::size_t block = arcs.size() + pairs.size();
  const std::size_t vars = roots.size() * block;
  if (vars > variable_bound) {
    throw TooLarge(std::to_string(vars) + " variables exceed the bound of " + std::to_string(variable_bound));
  }
  auto x_col = [&](std::size_t ri, std::size_t ai) { return ri * block + ai; };
  auto z_col = [&](std::size_t ri, std::size_t pi) { return ri * block + arcs.size() + pi; };

  std::vector<Rational> costs(vars, Rational(0));
  for (std::size_t ri = 0; ri < roots.size(); ++ri) {
    for (std::size_t ai = 0; ai < arcs.size(); ++ai) costs[x_col(ri, ai)] = *inst.edge_cost(arcs[ai].tail, arcs[ai].head);
  }
  DualSimplex lp(std::move(costs));
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    SparseRow row;
    for (std::size_t ri = 0; ri < roots.size(); ++ri) row.emplace_back(z_col(ri, pi), Rational(1));
    lp.add_basic_row(row, Rational(1), z_col(0, pi));
  }

  std::set<std::tuple<std::size_t, std::size_t, std::vector<char>>> added;
  auto add_cut = [&](std::size_t ri, std::size_t pi, std::vector<char> inside) {
    SparseRow row;
    for (std::size_t ai : leaving_arcs(arcs, inside)) row.emplace_back(x_col(ri, ai), Rational(1));
    row.emplace_back(z_col(ri, pi), Rational(-1));
    if (!added.emplace(ri, pi, std::move(inside)).second) return false;
    lp.add_cut(row, Rational(0));
    ++result.stats.cuts;
    return true;
  };
  for (std::size_t ri = 0; ri < roots.size(); ++ri) {
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      for (Vertex t : {pairs[pi].s, pairs[pi].t}) {
        if (t == roots[ri]) continue;
        std::vector<char> inside(n, 0);
        inside[static_cast<std::size_t>(t)] = 1;
        add_cut(ri, pi, std::move(inside));
      }
    }
  }

  result.stats.variables = vars;
  result.status = LpStatus::IterationCapExceeded;
  for (std::size_t round = 0; round < round_cap; ++round) {
    ++result.stats.rounds;
    if (!lp.optimize()) throw Infeasible("restricted forest LP is infeasible");
    const auto values = lp.values();
    result.solution = BcrSolution{};
    for (std::size_t ri = 0; ri < roots.size(); ++ri) {
      for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
        if (sgn(values[x_col(ri, ai)]) != 0) result.solution.set_x(roots[ri], arcs[ai], values[x_col(ri, ai)]);
      }
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        if (sgn(values[z_col(ri, pi)]) != 0) result.solution.set_z(roots[ri], pi, values[z_col(ri, pi)]);
      }
    }
    result.value = lp.objective();

    bool violated = false;
    for (std::size_t ri = 0; ri < roots.size(); ++ri) {
      const Vertex r = roots[ri];
      const ArcValues& xr = result.solution.x_of(r);
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const Rational z = result.solution.z_at(r, pi);
        if (sgn(z) == 0) continue;
        std::optional<MinCut> worst;
        for (Vertex p : {pairs[pi].s, pairs[pi].t}) {
          if (p == r) continue;
          const int source[] = {p};
          const int sink[] = {r};
          MinCut cut = arc_min_cut(xr, n, source, sink);
          if (cut.value < z && (!worst || cut.value < worst->value)) worst = std::move(cut);
        }
        if (worst && add_cut(ri, pi, mask_of(n, worst->source_side))) violated = true;
      }
    }
    if (!violated) {
      result.status = LpStatus::Optimal;
      break;
    }
  }
  result.stats.pivots = lp.pivots();
  return result;
}

TreeLpResult solve_tree_bcr(const Instance& inst, std::span<const Vertex> terminal_set, Vertex r0,
                            std::size_t round_cap, std::size_t variable_bound) {
  std::vector<Vertex> terms(terminal_set.begin(), terminal_set.end());
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (!std::binary_search(terms.begin(), terms.end(), r0)) {
    throw InvalidInstance("root '" + inst.label(r0) + "' is not a terminal");
  }
  TreeLpResult result;
  result.value = 0;
  result.solution.root = r0;
  DisjointSets sets = components_of(inst);
  for (Vertex t : terms) require_connected(sets, inst, t, r0);
  if (terms.size() == 1) return result;

  const std::vector<Arc> arcs = inst.arcs();
  const std::size_t n = inst.num_vertices();
  if (arcs.size() > variable_bound) {
    throw TooLarge(std::to_string(arcs.size()) + " variables exceed the bound of " + std::to_string(variable_bound));
  }
  std::vector<Rational> costs;
  for (const auto& a : arcs) costs.push_back(*inst.edge_cost(a.tail, a.head));
  DualSimplex lp(std::move(costs));

  std::set<std::vector<char>> added;
  auto add_cut = [&](std::vector<char> inside) {
    SparseRow row;
    for (std::size_t ai : leaving_arcs(arcs, inside)) row.emplace_back(ai, Rational(1));
    if (!added.insert(std::move(inside)).second) return false;
    lp.add_cut(row, Rational(1));
    ++result.stats.cuts;
    return true;
  };
  for (Vertex t : terms) {
    if (t == r0) continue;
    std::vector<char> inside(n, 0);
    inside[static_cast<std::size_t>(t)] = 1;
    add_cut(std::move(inside));
  }

  result.stats.variables = arcs.size();
  result.status = LpStatus::IterationCapExceeded;
  for (std::size_t round = 0; round < round_cap; ++round) {
    ++result.stats.rounds;
    if (!lp.optimize()) throw Infeasible("restricted tree LP is infeasible");
    const auto values = lp.values();
    result.solution.x.clear();
    for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
      if (sgn(values[ai]) != 0) result.solution.x[arcs[ai]] = values[ai];
    }
    result.value = lp.objective();

    bool violated = false;
    for (Vertex t : terms) {
      if (t == r0) continue;
      const int source[] = {t};
      const int sink[] = {r0};
      MinCut cut = arc_min_cut(result.solution.x, n, source, sink);
      if (cut.value < 1 && add_cut(mask_of(n, cut.source_side))) violated = true;
    }
    if (!violated) {
      result.status = LpStatus::Optimal;
      break;
    }
  }
  result.stats.pivots = lp.pivots();
  return result;
}

}  // namespace bcr
