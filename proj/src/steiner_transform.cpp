#include "bcr/steiner_transform.hpp"

#include <algorithm>
#include <deque>

#include "bcr/errors.hpp"

namespace bcr {

Arborescence build_arborescence(const Instance& inst, std::optional<Vertex> root) {
  DemandGraph dg = demand_graph(inst);
  auto nontrivial = dg.nontrivial_components();
  if (nontrivial.size() != 1) {
    throw NotSteinerTree("demand graph has " + std::to_string(nontrivial.size()) +
                         " nontrivial components, expected exactly one");
  }
  const auto& component = dg.components[nontrivial.front()];
  Vertex r0 = root.value_or(component.front());
  if (std::find(component.begin(), component.end(), r0) == component.end()) {
    throw InvalidInstance("root '" + inst.label(r0) + "' is not in the nontrivial demand component");
  }

  Arborescence arb;
  arb.root = r0;
  std::vector<char> seen(inst.num_vertices(), 0);
  seen[static_cast<std::size_t>(r0)] = 1;
  std::deque<Vertex> queue{r0};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    arb.order.push_back(u);
    for (const auto& p : inst.pairs()) {
      if (!p.contains(u)) continue;
      Vertex other = p.s == u ? p.t : p.s;
      if (seen[static_cast<std::size_t>(other)]) continue;
      seen[static_cast<std::size_t>(other)] = 1;
      arb.arcs.push_back({u, other});
      queue.push_back(other);
    }
  }
  return arb;
}

SourceReorientation reorient_source(const BcrSolution& sol, const Instance& inst, Vertex w,
                                    const Arborescence& arb) {
  SourceReorientation out;
  out.source = w;
  out.reoriented = sol.x_of(w);

  const std::size_t k = arb.order.size();
  std::vector<char> covered(inst.num_vertices(), 0);
  Rational running(0);
  for (std::size_t i = 0; i < k; ++i) {
    covered[static_cast<std::size_t>(arb.order[i])] = 1;
    auto zit = sol.z.find(w);
    if (zit != sol.z.end()) {
      for (const auto& [idx, value] : zit->second) {
        const Pair& p = inst.pairs()[idx];
        if ((covered[static_cast<std::size_t>(p.s)] || covered[static_cast<std::size_t>(p.t)]) && value > running) {
          running = value;
        }
      }
    }
    out.mu.push_back(i == 0 ? running : running - out.lambda.back());
    out.lambda.push_back(running);
  }

  const std::size_t n = inst.num_vertices();
  FlowNetwork net = network_of(out.reoriented, n);
  const int super = net.add_node();
  Rational supply(0);
  for (std::size_t i = 0; i < k; ++i) {
    if (arb.order[i] == w || sgn(out.mu[i]) == 0) continue;
    net.add_arc(super, arb.order[i], out.mu[i]);
    supply += out.mu[i];
  }
  if (sgn(supply) == 0) return out;

  FlowResult flow;
  try {
    const int source[] = {super};
    const int sink[] = {w};
    flow = max_flow(net, source, sink, supply);
  } catch (const LimitInfeasible&) {
    throw FlowShortfall("supplies of total " + format_rational(supply) + " cannot reach '" + inst.label(w) +
                        "' under x^" + inst.label(w));
  }
  for (const auto& [uv, f] : flow.arc_flows) {
    if (uv.first == super) continue;
    Arc arc{uv.first, uv.second};
    out.flow[arc] = f;
    auto& fwd = out.reoriented[arc];
    fwd -= f;
    if (sgn(fwd) == 0) out.reoriented.erase(arc);
    out.reoriented[arc.reversed()] += f;
  }
  return out;
}

TreeBcrSolution to_tree_bcr(const BcrSolution& sol, const Instance& inst, std::optional<Vertex> root) {
  Arborescence arb = build_arborescence(inst, root);
  TreeBcrSolution out;
  out.root = arb.root;
  for (Vertex w : sol.roots()) {
    for (const auto& [arc, value] : reorient_source(sol, inst, w, arb).reoriented) {
      out.x[arc] += value;
    }
  }
  std::erase_if(out.x, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

}  // namespace bcr
