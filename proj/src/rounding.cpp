#include "bcr/rounding.hpp"

#include <algorithm>
#include <sstream>

#include "bcr/density.hpp"
#include "bcr/disjoint_sets.hpp"
#include "bcr/structuring.hpp"

namespace bcr {

namespace {

std::vector<Vertex> normalized(std::span<const Vertex> set) {
  std::vector<Vertex> w(set.begin(), set.end());
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

std::pair<std::string, std::string> label_key(const Instance& inst, const Edge& e) {
  auto a = inst.label(e.u), b = inst.label(e.v);
  if (b < a) std::swap(a, b);
  return {a, b};
}

Rational inside_cost(const BcrSolution& sol, const Instance& inst, const std::vector<Vertex>& set) {
  Rational total(0);
  for (const auto& [r, xr] : sol.x) {
    for (const auto& [arc, value] : xr) {
      if (std::binary_search(set.begin(), set.end(), arc.tail) &&
          std::binary_search(set.begin(), set.end(), arc.head)) {
        total += *inst.edge_cost(arc.tail, arc.head) * value;
      }
    }
  }
  return total;
}

class Rounder {
 public:
  explicit Rounder(RoundingTrace& trace) : trace_(trace) {}

  EdgeSet run(const Instance& inst, const BcrSolution& sol) {
    if (inst.pairs().empty()) return {};
    MetricClosure closure = metric_closure(inst);
    const Instance& metric = closure.instance();

    auto [structured, report] = well_structure(sol, metric);
    DensityResult dense = densest_subgraph(structured, metric);
    auto [mst, mst_cost] = mst_on(metric, dense.set);

    RoundingLevel level;
    level.vertex_count = inst.num_vertices();
    for (Vertex v : dense.set) level.set.push_back(inst.label(v));
    level.density = dense.density;
    level.mst_cost = mst_cost;
    level.inside_cost = inside_cost(structured, metric, dense.set);
    level.structured_cost = report.cost_after;
    level.reroutes = report.reroutes;
    level.splitoffs = report.splitoffs.size();
    level.merged_label = fresh_label(inst);

    Contraction c = contract(metric, structured, dense.set, level.merged_label);
    level.contracted_cost = cost(c.solution, c.instance);
    trace_.levels.push_back(std::move(level));

    EdgeSet inner = run(c.instance, c.solution);

    EdgeSet metric_edges(mst.begin(), mst.end());
    for (const auto& e : inner) metric_edges.insert(c.edge_origin.at(e));
    EdgeSet out;
    for (const auto& e : metric_edges) {
      for (const auto& piece : closure.path_edges(e.u, e.v)) out.insert(piece);
    }
    return out;
  }

 private:
  std::string fresh_label(const Instance& inst) {
    std::string label;
    do {
      label = "W#" + std::to_string(++counter_);
    } while (inst.find(label));
    return label;
  }

  RoundingTrace& trace_;
  int counter_ = 0;
};

}  // namespace

std::pair<std::vector<Edge>, Rational> mst_on(const Instance& metric, std::span<const Vertex> set) {
  auto w = normalized(set);
  if (w.size() < 2) throw TooSmall("spanning tree needs at least two vertices");
  std::vector<std::pair<Edge, Rational>> candidates;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (const Rational* c = metric.edge_cost(w[i], w[j])) candidates.push_back({Edge::of(w[i], w[j]), *c});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return label_key(metric, a.first) < label_key(metric, b.first);
  });
  DisjointSets sets(metric.num_vertices());
  std::vector<Edge> tree;
  Rational total(0);
  for (const auto& [e, c] : candidates) {
    if (sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
      tree.push_back(e);
      total += c;
    }
  }
  if (tree.size() + 1 != w.size()) throw Disconnected("vertex set is not connected");
  return {std::move(tree), total};
}

Contraction contract(const Instance& inst, const BcrSolution& sol, std::span<const Vertex> set,
                     const std::string& label) {
  auto w = normalized(set);
  if (w.size() < 2) throw TooSmall("contraction needs at least two vertices");
  const std::size_t n = inst.num_vertices();
  std::vector<char> in_w(n, 0);
  for (Vertex v : w) in_w.at(static_cast<std::size_t>(v)) = 1;

  Contraction c;
  c.vertex_map.assign(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_w[v]) c.vertex_map[v] = c.instance.add_vertex(inst.labels()[v]);
  }
  c.merged = c.instance.add_vertex(label);
  for (Vertex v : w) c.vertex_map[static_cast<std::size_t>(v)] = c.merged;
  auto map = [&](Vertex v) { return c.vertex_map[static_cast<std::size_t>(v)]; };

  for (const auto& [e, cost] : inst.edges()) {
    Vertex a = map(e.u), b = map(e.v);
    if (a == b) continue;
    Edge ne = Edge::of(a, b);
    const Rational* current = c.instance.edge_cost(a, b);
    if (!current || cost < *current) {
      c.instance.add_edge(a, b, cost);
      c.edge_origin[ne] = e;
    }
  }

  std::vector<std::optional<std::size_t>> pair_map(inst.pairs().size());
  for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
    const auto& p = inst.pairs()[i];
    Vertex s = map(p.s), t = map(p.t);
    if (s != t) pair_map[i] = c.instance.add_pair(s, t);
  }

  for (const auto& [r, xr] : sol.x) {
    for (const auto& [arc, value] : xr) {
      Vertex a = map(arc.tail), b = map(arc.head);
      if (a != b) c.solution.add_x(map(r), Arc{a, b}, value);
    }
  }
  for (const auto& [r, zr] : sol.z) {
    for (const auto& [i, value] : zr) {
      if (pair_map[i]) c.solution.add_z(map(r), *pair_map[i], value);
    }
  }
  return c;
}

RoundingResult round_solution(const BcrSolution& sol, const Instance& inst) {
  Verdict v = verify_primal(sol, inst);
  if (!v.feasible()) throw Infeasible("input solution is infeasible: " + v.describe(inst));

  RoundingResult result;
  Rounder rounder(result.trace);
  result.trace.unpruned = rounder.run(inst, sol);
  result.trace.unpruned_cost = forest_cost(result.trace.unpruned, inst);
  result.forest = prune(result.trace.unpruned, inst);
  result.trace.forest = result.forest;
  result.trace.total_cost = forest_cost(result.forest, inst);
  return result;
}

std::string format_trace(const RoundingTrace& trace) {
  std::ostringstream out;
  for (std::size_t i = 0; i < trace.levels.size(); ++i) {
    const auto& l = trace.levels[i];
    out << "level " << i << '\n';
    out << "  vertices " << l.vertex_count << '\n';
    out << "  W";
    for (const auto& s : l.set) out << ' ' << s;
    out << '\n';
    out << "  merged " << l.merged_label << '\n';
    out << "  density " << format_fraction(l.density) << '\n';
    out << "  mst_cost " << format_fraction(l.mst_cost) << '\n';
    out << "  inside_cost " << format_fraction(l.inside_cost) << '\n';
    out << "  structured_cost " << format_fraction(l.structured_cost) << '\n';
    out << "  contracted_cost " << format_fraction(l.contracted_cost) << '\n';
    out << "  reroutes " << l.reroutes << '\n';
    out << "  splitoffs " << l.splitoffs << '\n';
  }
  out << "unpruned_cost " << format_fraction(trace.unpruned_cost) << '\n';
  out << "total_cost " << format_fraction(trace.total_cost) << '\n';
  return out.str();
}

RatioReport check_ratio(const BcrSolution& sol, const Instance& inst) {
  RatioReport report;
  report.lp_cost = cost(sol, inst);
  report.result = round_solution(sol, inst);
  report.rounded_cost = report.result.trace.total_cost;
  const bool half = is_half_integral(sol);
  if (sgn(report.lp_cost) == 0) {
    if (sgn(report.rounded_cost) != 0) {
      throw RatioExceeded("positive rounded cost against zero LP cost", report.result.trace);
    }
    report.ratio = 1;
    return report;
  }
  report.ratio = report.rounded_cost / report.lp_cost;
  if (half && report.ratio > Rational(16, 9)) {
    throw RatioExceeded("ratio " + format_fraction(report.ratio) + " exceeds 16/9", report.result.trace);
  }
  return report;
}

}  // namespace bcr
