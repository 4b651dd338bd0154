#include "bcr/structuring.hpp"

#include <algorithm>
#include <stdexcept>

#include "bcr/errors.hpp"

namespace bcr {

namespace {

std::vector<Vertex> dedup(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Rational cut_value(const FlowNetwork& net, std::vector<Vertex> sources, std::vector<Vertex> sinks) {
  sources = dedup(std::move(sources));
  sinks = dedup(std::move(sinks));
  return min_cut(net, sources, sinks).value;
}

void lower_to(std::optional<Rational>& best, const Rational& candidate) {
  if (!best || candidate < *best) best = candidate;
}

Rational clamp(const std::optional<Rational>& slack, const Rational& upper) {
  if (!slack || *slack >= upper) return upper;
  return sgn(*slack) > 0 ? *slack : Rational(0);
}

std::vector<Vertex> roots_by_label(const BcrSolution& sol, const Instance& inst) {
  std::vector<Vertex> roots;
  for (const auto& [r, xr] : sol.x) roots.push_back(r);
  std::sort(roots.begin(), roots.end(), [&](Vertex a, Vertex b) { return inst.label(a) < inst.label(b); });
  return roots;
}

struct Candidate {
  Vertex u;
  Vertex w;
};

// (u,w) with x^r_(u,v) > 0 and x^r_(v,w) > 0, u != w, ordered by labels.
std::vector<Candidate> candidates_at(const ArcValues& xr, const Instance& inst, Vertex v) {
  std::vector<Vertex> in, out;
  for (Vertex n : inst.neighbors(v)) {
    auto a = xr.find(Arc{n, v});
    if (a != xr.end() && sgn(a->second) > 0) in.push_back(n);
    auto b = xr.find(Arc{v, n});
    if (b != xr.end() && sgn(b->second) > 0) out.push_back(n);
  }
  auto by_label = [&](Vertex a, Vertex b) { return inst.label(a) < inst.label(b); };
  std::sort(in.begin(), in.end(), by_label);
  std::sort(out.begin(), out.end(), by_label);
  std::vector<Candidate> result;
  for (Vertex u : in) {
    for (Vertex w : out) {
      if (u != w) result.push_back({u, w});
    }
  }
  return result;
}

void check_triangle(const Instance& inst, Vertex u, Vertex v, Vertex w) {
  const Rational* uw = inst.edge_cost(u, w);
  const Rational* uv = inst.edge_cost(u, v);
  const Rational* vw = inst.edge_cost(v, w);
  if (!uw || !uv || !vw || *uw > *uv + *vw) {
    throw NotMetric("triangle (" + inst.label(u) + "," + inst.label(v) + "," + inst.label(w) +
                    ") violates the triangle inequality");
  }
}

}  // namespace

BcrSolution reroute_steiner_roots(const BcrSolution& sol, const Instance& inst, std::size_t* reroutes) {
  BcrSolution out = sol;
  auto mask = terminal_mask(inst);
  std::vector<Vertex> steiner_roots;
  for (const auto& [r, zr] : sol.z) {
    if (!mask[static_cast<std::size_t>(r)]) steiner_roots.push_back(r);
  }
  std::sort(steiner_roots.begin(), steiner_roots.end(),
            [&](Vertex a, Vertex b) { return inst.label(a) < inst.label(b); });

  std::size_t count = 0;
  for (Vertex r : steiner_roots) {
    auto zr = out.z.at(r);
    std::size_t best = zr.begin()->first;
    for (const auto& [i, value] : zr) {
      if (value > zr.at(best)) best = i;
    }
    const Rational& amount = zr.at(best);
    Vertex v = inst.pairs()[best].s;

    ArcValues xr = out.x_of(r);
    FlowResult flow;
    try {
      const Vertex source[] = {v};
      const Vertex sink[] = {r};
      flow = max_flow(network_of(xr, inst.num_vertices()), source, sink, amount);
    } catch (const LimitInfeasible&) {
      throw InfeasibleInput("no flow of value " + format_rational(amount) + " from '" + inst.label(v) + "' to '" +
                            inst.label(r) + "' under x^" + inst.label(r));
    }
    for (const auto& [uv, f] : flow.arc_flows) {
      Arc fwd{uv.first, uv.second};
      xr[fwd] -= f;
      xr[fwd.reversed()] += f;
    }
    out.x.erase(r);
    for (const auto& [arc, value] : xr) out.add_x(v, arc, value);
    for (const auto& [i, value] : zr) out.add_z(v, i, value);
    out.z.erase(r);
    ++count;
  }
  if (reroutes) *reroutes = count;
  return out;
}

bool z_on_terminals(const BcrSolution& sol, const Instance& inst) {
  auto mask = terminal_mask(inst);
  for (const auto& [r, zr] : sol.z) {
    if (!mask[static_cast<std::size_t>(r)] && !zr.empty()) return false;
  }
  return true;
}

Rational splitoff_capacity(const BcrSolution& sol, const Instance& inst, Vertex root, Vertex u, Vertex v,
                           Vertex w) {
  const ArcValues& xr = sol.x_of(root);
  Rational upper = min_of(sol.x_at(root, Arc{u, v}), sol.x_at(root, Arc{v, w}));
  if (u == w || u == v || v == w || sgn(upper) <= 0) return Rational(0);

  auto zit = sol.z.find(root);
  if (zit == sol.z.end()) return upper;
  FlowNetwork net = network_of(xr, inst.num_vertices());
  std::optional<Rational> slack;
  for (const auto& [i, z] : zit->second) {
    if (sgn(z) <= 0) continue;
    const Pair& p = inst.pairs()[i];
    // U contains v and some t in P, avoids r, u, w.
    if (v != root) {
      for (Vertex t : {p.s, p.t}) {
        if (t == root || t == u || t == w) continue;
        lower_to(slack, cut_value(net, {v, t}, {root, u, w}) - z);
      }
    }
    // U contains u, w and some t in P, avoids r, v.
    if (u != root && w != root) {
      if (p.contains(u) || p.contains(w)) {
        lower_to(slack, cut_value(net, {u, w}, {root, v}) - z);
      } else {
        for (Vertex t : {p.s, p.t}) {
          if (t == root || t == v) continue;
          lower_to(slack, cut_value(net, {u, w, t}, {root, v}) - z);
        }
      }
    }
  }
  return clamp(slack, upper);
}

std::optional<SplitOff> find_splitoff(const BcrSolution& sol, const Instance& metric) {
  const auto order = metric.vertices_by_label();
  for (Vertex r : roots_by_label(sol, metric)) {
    for (Vertex v : order) {
      for (const auto& c : candidates_at(sol.x_of(r), metric, v)) {
        Rational eps = splitoff_capacity(sol, metric, r, c.u, v, c.w);
        if (sgn(eps) > 0) return SplitOff{r, c.u, v, c.w, eps};
      }
    }
  }
  return std::nullopt;
}

BcrSolution split_off(const BcrSolution& sol, const Instance& metric, std::vector<SplitOff>* log) {
  BcrSolution out = sol;
  const auto order = metric.vertices_by_label();
  std::size_t arc_count = 2 * metric.edges().size();
  const std::size_t cap = std::max<std::size_t>(1, metric.num_vertices() * arc_count * arc_count);

  for (std::size_t pass = 0;; ++pass) {
    if (pass >= cap) throw std::logic_error("splitting-off did not reach a fixpoint");
    bool changed = false;
    for (Vertex r : roots_by_label(out, metric)) {
      for (Vertex v : order) {
        for (const auto& c : candidates_at(out.x_of(r), metric, v)) {
          check_triangle(metric, c.u, v, c.w);
          Rational eps = splitoff_capacity(out, metric, r, c.u, v, c.w);
          if (sgn(eps) <= 0) continue;
          out.add_x(r, Arc{c.u, v}, -eps);
          out.add_x(r, Arc{v, c.w}, -eps);
          out.add_x(r, Arc{c.u, c.w}, eps);
          if (log) log->push_back({r, c.u, v, c.w, eps});
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return out;
}

std::pair<BcrSolution, StructuringReport> well_structure(const BcrSolution& sol, const Instance& metric) {
  StructuringReport report;
  report.cost_before = cost(sol, metric);
  BcrSolution rerouted = reroute_steiner_roots(sol, metric, &report.reroutes);
  BcrSolution out = split_off(rerouted, metric, &report.splitoffs);
  report.cost_after = cost(out, metric);
  return {std::move(out), std::move(report)};
}

Rational reduction_capacity(const BcrSolution& sol, const Instance& inst, Vertex root, Arc arc) {
  Rational upper = sol.x_at(root, arc);
  if (sgn(upper) <= 0) return Rational(0);
  if (arc.tail == root) return upper;
  auto zit = sol.z.find(root);
  if (zit == sol.z.end()) return upper;
  FlowNetwork net = network_of(sol.x_of(root), inst.num_vertices());
  std::optional<Rational> slack;
  for (const auto& [i, z] : zit->second) {
    if (sgn(z) <= 0) continue;
    const Pair& p = inst.pairs()[i];
    for (Vertex t : {p.s, p.t}) {
      if (t == root || t == arc.head) continue;
      lower_to(slack, cut_value(net, {arc.tail, t}, {root, arc.head}) - z);
    }
  }
  return clamp(slack, upper);
}

BcrSolution fully_reduce(const BcrSolution& sol, const Instance& inst, std::vector<Reduction>* log) {
  BcrSolution out = sol;
  auto by_labels = [&](const Arc& a, const Arc& b) {
    if (a.tail != b.tail) return inst.label(a.tail) < inst.label(b.tail);
    return inst.label(a.head) < inst.label(b.head);
  };
  while (true) {
    bool changed = false;
    for (Vertex r : roots_by_label(out, inst)) {
      std::vector<Arc> arcs;
      for (const auto& [arc, value] : out.x_of(r)) arcs.push_back(arc);
      std::sort(arcs.begin(), arcs.end(), by_labels);
      for (const Arc& arc : arcs) {
        Rational delta = reduction_capacity(out, inst, r, arc);
        if (sgn(delta) <= 0) continue;
        out.add_x(r, arc, -delta);
        if (log) log->push_back({r, arc, delta});
        changed = true;
      }
    }
    if (!changed) break;
  }
  return out;
}

}  // namespace bcr
