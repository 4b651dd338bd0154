#include "bcr/density.hpp"

#include <algorithm>
#include <bit>

#include "bcr/errors.hpp"

namespace bcr {

namespace {

using Weights = std::map<Edge, Rational>;

std::vector<Vertex> normalized(std::span<const Vertex> set) {
  std::vector<Vertex> w(set.begin(), set.end());
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

Rational inside_weight(const Weights& weights, const std::vector<Vertex>& sorted_set) {
  Rational total(0);
  for (const auto& [e, value] : weights) {
    if (std::binary_search(sorted_set.begin(), sorted_set.end(), e.u) &&
        std::binary_search(sorted_set.begin(), sorted_set.end(), e.v)) {
      total += value;
    }
  }
  return total;
}

Rational density_from(const Weights& weights, const std::vector<Vertex>& sorted_set) {
  return inside_weight(weights, sorted_set) / Rational(static_cast<long>(sorted_set.size()) - 1);
}

std::vector<std::string> sorted_labels(const Instance& inst, const std::vector<Vertex>& set) {
  std::vector<std::string> labels;
  for (Vertex v : set) labels.push_back(inst.label(v));
  std::sort(labels.begin(), labels.end());
  return labels;
}

// Strictly better in the (density desc, size asc, labels asc) order.
bool better(const Instance& inst, const DensityResult& a, const DensityResult& b) {
  if (a.density != b.density) return a.density > b.density;
  if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
  return sorted_labels(inst, a.set) < sorted_labels(inst, b.set);
}

std::vector<Vertex> support_vertices(const Weights& weights) {
  std::vector<Vertex> out;
  for (const auto& [e, value] : weights) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DensityResult anchored(const Weights& weights, Edge anchor) {
  const auto support = support_vertices(weights);
  Rational anchor_weight(0);
  if (auto it = weights.find(anchor); it != weights.end()) anchor_weight = it->second;

  DensityResult best;
  best.set = {anchor.u, anchor.v};
  best.density = anchor_weight;
  best.anchor = anchor;

  // Node layout: 0 source, 1 sink, then one node per free support vertex,
  // then one node per non-anchor support edge.
  std::map<Vertex, int> vertex_node;
  int next = 2;
  for (Vertex v : support) {
    if (v != anchor.u && v != anchor.v) vertex_node[v] = next++;
  }
  Rational other_weight(0);
  Rational infinite(1);
  for (const auto& [e, value] : weights) {
    infinite += value;
    if (e != anchor) other_weight += value;
  }

  Rational gamma = best.density;
  while (!vertex_node.empty()) {
    FlowNetwork net(static_cast<std::size_t>(next));
    for (const auto& [e, value] : weights) {
      if (e == anchor) continue;
      int node = net.add_node();
      net.add_arc(0, node, value);
      for (Vertex end : {e.u, e.v}) {
        auto it = vertex_node.find(end);
        if (it != vertex_node.end()) net.add_arc(node, it->second, infinite);
      }
    }
    for (const auto& [v, node] : vertex_node) {
      if (sgn(gamma) > 0) net.add_arc(node, 1, gamma);
    }
    const int source[] = {0};
    const int sink[] = {1};
    MinCut mc = min_cut(net, source, sink);
    Rational h_min = gamma - anchor_weight - (other_weight - mc.value);
    if (sgn(h_min) >= 0) break;

    std::vector<Vertex> set{anchor.u, anchor.v};
    for (const auto& [v, node] : vertex_node) {
      if (std::binary_search(mc.source_side.begin(), mc.source_side.end(), node)) set.push_back(v);
    }
    std::sort(set.begin(), set.end());
    Rational d = density_from(weights, set);
    if (d <= gamma) break;
    gamma = d;
    best.set = std::move(set);
    best.density = d;
  }
  return best;
}

DensityResult global_densest(const Weights& weights, const Instance& inst) {
  if (weights.empty()) throw NoSupport("solution has no positive x value");
  std::optional<DensityResult> best;
  for (const auto& [e, value] : weights) {
    DensityResult r = anchored(weights, e);
    if (!best || better(inst, r, *best)) best = std::move(r);
  }
  return *best;
}

}  // namespace

Rational density_of(const BcrSolution& sol, std::span<const Vertex> set) {
  auto w = normalized(set);
  if (w.size() < 2) throw TooSmall("density needs at least two vertices");
  return density_from(undirected_projection(sol), w);
}

DensityResult anchored_densest(const BcrSolution& sol, const Instance&, Edge anchor) {
  return anchored(undirected_projection(sol), anchor);
}

DensityResult densest_subgraph(const BcrSolution& sol, const Instance& inst) {
  return global_densest(undirected_projection(sol), inst);
}

DensityResult densest_subgraph_bruteforce(const BcrSolution& sol, const Instance& inst, std::size_t max_support) {
  Weights weights = undirected_projection(sol);
  if (weights.empty()) throw NoSupport("solution has no positive x value");
  const auto support = support_vertices(weights);
  if (support.size() > max_support) {
    throw TooLarge("brute-force density over " + std::to_string(support.size()) + " support vertices exceeds " +
                   std::to_string(max_support));
  }
  const std::size_t k = support.size();
  std::optional<DensityResult> best;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) < 2) continue;
    DensityResult r;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) r.set.push_back(support[i]);
    }
    r.density = density_from(weights, r.set);
    if (!best || better(inst, r, *best)) best = std::move(r);
  }
  return *best;
}

Rational ProjectionMultigraph::density(std::span<const Vertex> set) const {
  auto w = normalized(set);
  if (w.size() < 2) throw TooSmall("density needs at least two vertices");
  std::int64_t inside = 0;
  for (const auto& [e, m] : multiplicity) {
    if (std::binary_search(w.begin(), w.end(), e.u) && std::binary_search(w.begin(), w.end(), e.v)) inside += m;
  }
  Rational d(mpz_class(static_cast<long>(inside)), mpz_class(2 * (static_cast<long>(w.size()) - 1)));
  d.canonicalize();
  return d;
}

ProjectionMultigraph projection_multigraph(const BcrSolution& sol, std::size_t num_vertices) {
  ProjectionMultigraph pm;
  pm.degree.assign(num_vertices, 0);
  for (const auto& [e, value] : undirected_projection(sol)) {
    Rational twice = value * 2;
    if (twice.get_den() != 1 || !twice.get_num().fits_slong_p()) {
      throw NotHalfIntegral("edge mass " + format_rational(value) + " is not a multiple of 1/2");
    }
    std::int64_t m = twice.get_num().get_si();
    pm.multiplicity[e] = m;
    pm.degree.at(static_cast<std::size_t>(e.u)) += m;
    pm.degree.at(static_cast<std::size_t>(e.v)) += m;
  }
  return pm;
}

std::vector<VertexClass> classify_vertices(const ProjectionMultigraph& pm) {
  std::vector<VertexClass> out;
  out.reserve(pm.degree.size());
  for (std::int64_t d : pm.degree) {
    out.push_back(d >= 3 ? VertexClass::HighDegree : d >= 1 ? VertexClass::LowDegree : VertexClass::Nonsupport);
  }
  return out;
}

std::optional<Vertex> find_structure_violation(const ProjectionMultigraph& pm) {
  auto cls = classify_vertices(pm);
  const std::size_t n = pm.degree.size();
  std::vector<char> parallel(n, 0), near_high(n, 0);
  for (const auto& [e, m] : pm.multiplicity) {
    auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    if (m >= 2) parallel[u] = parallel[v] = 1;
    if (cls[v] == VertexClass::HighDegree) near_high[u] = 1;
    if (cls[u] == VertexClass::HighDegree) near_high[v] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (cls[v] == VertexClass::Nonsupport) continue;
    bool ok = pm.degree[v] >= 2 && (parallel[v] || cls[v] == VertexClass::HighDegree || near_high[v]);
    if (!ok) return static_cast<Vertex>(v);
  }
  return std::nullopt;
}

}  // namespace bcr
