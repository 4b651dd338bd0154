#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace oracle {

using bcr::Arc;
using bcr::Vertex;

namespace {

Rational out_capacity(const bcr::FlowNetwork& net, const std::vector<char>& inside) {
  Rational total(0);
  for (const auto& [uv, cap] : net.arcs()) {
    if (inside[static_cast<std::size_t>(uv.first)] && !inside[static_cast<std::size_t>(uv.second)]) total += cap;
  }
  return total;
}

Rational out_mass(const bcr::ArcValues& x, std::uint32_t mask) {
  Rational total(0);
  for (const auto& [arc, v] : x) {
    if ((mask >> arc.tail & 1u) && !(mask >> arc.head & 1u)) total += v;
  }
  return total;
}

// Largest z^r_P over pairs with an endpoint in the mask.
Rational demand(const bcr::BcrSolution& sol, const bcr::Instance& inst, Vertex r, std::uint32_t mask) {
  Rational need(0);
  for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
    const auto& p = inst.pairs()[i];
    if ((mask >> p.s & 1u) || (mask >> p.t & 1u)) need = std::max(need, sol.z_at(r, i));
  }
  return need;
}

// Minimum over U avoiding r of slack(U) / loss(U) among sets whose cut loses
// mass, where loss is the decrease of x^r(delta^+ U) per unit of change.
template <typename Loss>
Rational min_slack(const bcr::BcrSolution& sol, const bcr::Instance& inst, Vertex r, Rational bound, Loss loss) {
  const std::size_t n = inst.num_vertices();
  if (n > 14) throw std::invalid_argument("instance too large to enumerate");
  const bcr::ArcValues& xr = sol.x_of(r);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (mask >> r & 1u) continue;
    int lost = loss(mask);
    if (lost <= 0) continue;
    Rational slack = (out_mass(xr, mask) - demand(sol, inst, r, mask)) / lost;
    bound = std::min(bound, slack);
  }
  return bound;
}

}  // namespace

Rational splitoff_capacity(const bcr::BcrSolution& sol, const bcr::Instance& inst, Vertex root, Vertex u, Vertex v,
                           Vertex w) {
  Rational bound = std::min(sol.x_at(root, Arc{u, v}), sol.x_at(root, Arc{v, w}));
  return min_slack(sol, inst, root, bound, [&](std::uint32_t m) {
    auto in = [m](Vertex a) { return static_cast<int>(m >> a & 1u); };
    int before = in(u) * (1 - in(v)) + in(v) * (1 - in(w));
    int after = in(u) * (1 - in(w));
    return before - after;
  });
}

Rational reduction_capacity(const bcr::BcrSolution& sol, const bcr::Instance& inst, Vertex root, Arc arc) {
  return min_slack(sol, inst, root, sol.x_at(root, arc), [&](std::uint32_t m) {
    return static_cast<int>((m >> arc.tail & 1u) && !(m >> arc.head & 1u));
  });
}

Rational enumerated_min_cut(const bcr::FlowNetwork& net, std::span<const int> sources, std::span<const int> sinks) {
  const std::size_t n = net.num_nodes();
  std::vector<char> fixed(n, 0);
  for (int s : sources) fixed[static_cast<std::size_t>(s)] = 1;
  for (int t : sinks) fixed[static_cast<std::size_t>(t)] = 2;
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v) {
    if (!fixed[v]) free.push_back(v);
  }
  if (free.size() > 20) throw std::invalid_argument("network too large to enumerate");
  bool first = true;
  Rational best;
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    std::vector<char> inside(n, 0);
    for (std::size_t v = 0; v < n; ++v) inside[v] = fixed[v] == 1;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (mask >> i & 1u) inside[free[i]] = 1;
    }
    Rational c = out_capacity(net, inside);
    if (first || c < best) best = c;
    first = false;
  }
  return best;
}

bool primal_feasible(const bcr::BcrSolution& sol, const bcr::Instance& inst) {
  const std::size_t n = inst.num_vertices();
  if (n > 12) throw std::invalid_argument("instance too large to enumerate");
  for (const auto& [r, xr] : sol.x) {
    for (const auto& [arc, v] : xr) {
      if (v < 0 || !inst.has_edge(arc.tail, arc.head)) return false;
    }
  }
  std::vector<Rational> zsum(inst.pairs().size(), Rational(0));
  for (const auto& [r, zr] : sol.z) {
    for (const auto& [i, v] : zr) {
      if (v < 0) return false;
      zsum.at(i) += v;
    }
  }
  for (const auto& s : zsum) {
    if (s != 1) return false;
  }
  static const bcr::ArcValues empty;
  for (Vertex r = 0; static_cast<std::size_t>(r) < n; ++r) {
    auto xit = sol.x.find(r);
    const bcr::ArcValues& xr = xit == sol.x.end() ? empty : xit->second;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (mask >> r & 1u) continue;
      Rational cut = out_mass(xr, mask);
      for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
        const auto& p = inst.pairs()[i];
        if (!(mask >> p.s & 1u) && !(mask >> p.t & 1u)) continue;
        if (cut < sol.z_at(r, i)) return false;
      }
    }
  }
  return true;
}

bool tree_feasible(const bcr::ArcValues& x, Vertex root, std::span<const Vertex> terminals,
                   const bcr::Instance& inst) {
  const std::size_t n = inst.num_vertices();
  if (n > 16) throw std::invalid_argument("instance too large to enumerate");
  std::uint32_t term_mask = 0;
  for (Vertex t : terminals) term_mask |= 1u << t;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if ((mask >> root & 1u) || !(mask & term_mask)) continue;
    if (out_mass(x, mask) < 1) return false;
  }
  return true;
}

bool undirected_cut_feasible(const bcr::BcrSolution& sol, const bcr::Instance& inst) {
  const std::size_t n = inst.num_vertices();
  if (n > 16) throw std::invalid_argument("instance too large to enumerate");
  std::map<std::pair<Vertex, Vertex>, Rational> mass;
  for (const auto& [r, xr] : sol.x) {
    for (const auto& [arc, v] : xr) mass[{std::min(arc.tail, arc.head), std::max(arc.tail, arc.head)}] += v;
  }
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    bool separates = false;
    for (const auto& p : inst.pairs()) {
      if ((mask >> p.s & 1u) != (mask >> p.t & 1u)) separates = true;
    }
    if (!separates) continue;
    Rational cut(0);
    for (const auto& [e, v] : mass) {
      if ((mask >> e.first & 1u) != (mask >> e.second & 1u)) cut += v;
    }
    if (cut < 1) return false;
  }
  return true;
}

Rational densest_value(const bcr::BcrSolution& sol, std::size_t n) {
  if (n > 20) throw std::invalid_argument("instance too large to enumerate");
  Rational best(0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size < 2) continue;
    Rational inside(0);
    for (const auto& [r, xr] : sol.x) {
      for (const auto& [arc, v] : xr) {
        if ((mask >> arc.tail & 1u) && (mask >> arc.head & 1u)) inside += v;
      }
    }
    Rational d = inside / (size - 1);
    if (d > best) best = d;
  }
  return best;
}

bool connects_all_pairs(const bcr::EdgeSet& edges, const bcr::Instance& inst) {
  std::vector<std::vector<Vertex>> adj(inst.num_vertices());
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (const auto& p : inst.pairs()) {
    std::vector<char> seen(inst.num_vertices(), 0);
    std::deque<Vertex> queue{p.s};
    seen[static_cast<std::size_t>(p.s)] = 1;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
    if (!seen[static_cast<std::size_t>(p.t)]) return false;
  }
  return true;
}

bcr::BcrSolution tree_as_forest(const bcr::TreeBcrSolution& tree, const bcr::Instance& inst) {
  bcr::BcrSolution sol;
  for (const auto& [arc, v] : tree.x) sol.set_x(tree.root, arc, v);
  for (std::size_t i = 0; i < inst.pairs().size(); ++i) sol.set_z(tree.root, i, Rational(1));
  return sol;
}

bcr::FlowNetwork random_network(std::mt19937_64& rng, std::size_t n) {
  bcr::FlowNetwork net(n);
  std::uniform_int_distribution<int> arc_draw(0, 4);
  std::uniform_int_distribution<int> cap_draw(0, 4);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || arc_draw(rng) >= 2) continue;
      Rational cap(cap_draw(rng), 2);
      cap.canonicalize();
      net.add_arc(static_cast<int>(u), static_cast<int>(v), cap);
    }
  }
  return net;
}

}  // namespace oracle
