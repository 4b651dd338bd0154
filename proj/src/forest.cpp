#include "bcr/forest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "bcr/disjoint_sets.hpp"
#include "bcr/errors.hpp"
#include "text.hpp"

namespace bcr {

namespace {

std::pair<std::string, std::string> label_key(const Instance& inst, const Edge& e) {
  auto a = inst.label(e.u), b = inst.label(e.v);
  if (b < a) std::swap(a, b);
  return {a, b};
}

bool connects_all(const std::vector<Edge>& edges, const Instance& inst) {
  DisjointSets sets(inst.num_vertices());
  for (const auto& e : edges) sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
  for (const auto& p : inst.pairs()) {
    if (!sets.same(static_cast<std::size_t>(p.s), static_cast<std::size_t>(p.t))) return false;
  }
  return true;
}

std::vector<Edge> label_sorted(const EdgeSet& edges, const Instance& inst) {
  std::vector<Edge> out(edges.begin(), edges.end());
  std::sort(out.begin(), out.end(), [&](const Edge& a, const Edge& b) { return label_key(inst, a) < label_key(inst, b); });
  return out;
}

}  // namespace

std::string ForestVerdict::describe(const Instance& inst) const {
  if (feasible) return "feasible";
  const auto& p = inst.pairs().at(*unconnected_pair);
  return "unconnected pair {" + inst.label(p.s) + "," + inst.label(p.t) + "}";
}

ForestVerdict check_forest(const EdgeSet& edges, const Instance& inst) {
  DisjointSets sets(inst.num_vertices());
  for (const auto& e : edges) {
    if (!inst.has_edge(e.u, e.v)) {
      throw UnknownEdge("edge {" + inst.label(e.u) + "," + inst.label(e.v) + "} is not in the instance");
    }
    sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
  }
  for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
    const auto& p = inst.pairs()[i];
    if (!sets.same(static_cast<std::size_t>(p.s), static_cast<std::size_t>(p.t))) return {false, i};
  }
  return {};
}

Rational forest_cost(const EdgeSet& edges, const Instance& inst) {
  Rational total(0);
  for (const auto& e : edges) {
    const Rational* c = inst.edge_cost(e.u, e.v);
    if (!c) throw UnknownEdge("edge {" + inst.label(e.u) + "," + inst.label(e.v) + "} is not in the instance");
    total += *c;
  }
  return total;
}

std::pair<Rational, EdgeSet> brute_force_opt(const Instance& inst, std::size_t edge_cap) {
  const std::size_t m = inst.edges().size();
  if (m > edge_cap || m >= 63) {
    throw TooLarge(std::to_string(m) + " edges exceed the brute-force cap of " + std::to_string(edge_cap));
  }
  EdgeSet all;
  for (const auto& [e, c] : inst.edges()) all.insert(e);
  const std::vector<Edge> order = label_sorted(all, inst);
  std::vector<Rational> costs;
  for (const auto& e : order) costs.push_back(*inst.edge_cost(e.u, e.v));

  std::optional<Rational> best_cost;
  std::vector<Edge> best;
  std::vector<Edge> chosen;
  Rational total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    chosen.clear();
    total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        chosen.push_back(order[i]);
        total += costs[i];
      }
    }
    if (best_cost && total > *best_cost) continue;
    if (!connects_all(chosen, inst)) continue;
    bool take = !best_cost || total < *best_cost;
    if (!take) {
      take = std::lexicographical_compare(
          chosen.begin(), chosen.end(), best.begin(), best.end(),
          [&](const Edge& a, const Edge& b) { return label_key(inst, a) < label_key(inst, b); });
    }
    if (take) {
      best_cost = total;
      best = chosen;
    }
  }
  if (!best_cost) throw Disconnected("no edge subset connects every pair");
  return {*best_cost, EdgeSet(best.begin(), best.end())};
}

EdgeSet prune(const EdgeSet& edges, const Instance& inst) {
  std::vector<Edge> order(edges.begin(), edges.end());
  std::sort(order.begin(), order.end(), [&](const Edge& a, const Edge& b) {
    const Rational& ca = *inst.edge_cost(a.u, a.v);
    const Rational& cb = *inst.edge_cost(b.u, b.v);
    if (ca != cb) return ca > cb;
    return label_key(inst, a) < label_key(inst, b);
  });
  EdgeSet kept = edges;
  for (const auto& e : order) {
    kept.erase(e);
    if (!connects_all(std::vector<Edge>(kept.begin(), kept.end()), inst)) kept.insert(e);
  }
  return kept;
}

EdgeSet parse_forest(std::istream& in, const Instance& inst) {
  EdgeSet edges;
  detail::for_each_line(in, [&](const std::vector<std::string>& tok, int line_no) {
    if (tok[0] != "edge") detail::parse_fail(line_no, "unknown directive '" + tok[0] + "'");
    detail::expect_tokens(tok, 3, line_no);
    auto a = inst.find(tok[1]);
    auto b = inst.find(tok[2]);
    if (!a || !b) detail::parse_fail(line_no, "unknown vertex");
    if (*a == *b) detail::parse_fail(line_no, "edge with identical endpoints");
    edges.insert(Edge::of(*a, *b));
  });
  return edges;
}

void write_forest(std::ostream& out, const EdgeSet& edges, const Instance& inst) {
  for (const auto& e : label_sorted(edges, inst)) {
    auto [a, b] = label_key(inst, e);
    out << "edge " << a << ' ' << b << '\n';
  }
}

std::string forest_to_string(const EdgeSet& edges, const Instance& inst) {
  std::ostringstream out;
  write_forest(out, edges, inst);
  return out.str();
}

}  // namespace bcr
