#include "bcr/generators.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "bcr/disjoint_sets.hpp"
#include "bcr/errors.hpp"

namespace bcr {

namespace {

// ---- lower bound family ----------------------------------------------------

std::string indexed(const char* prefix, int i) { return prefix + std::to_string(i); }

// ---- gadget ----------------------------------------------------------------

const char* const kGadgetVertices[] = {"a1", "a2", "a3", "b1", "b2", "c1", "c2", "d1", "d2", "e1",
                                       "e2", "s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8"};

const char* const kGadgetEdges[][2] = {
    {"a1", "s1"}, {"a1", "s2"}, {"s1", "b1"}, {"s1", "b2"}, {"s2", "c1"}, {"s2", "c2"},
    {"s3", "b1"}, {"s3", "b2"}, {"s4", "c1"}, {"s4", "c2"}, {"a2", "s3"}, {"a2", "s4"},
    {"a2", "s5"}, {"a2", "s6"}, {"s5", "d1"}, {"s5", "d2"}, {"s6", "e1"}, {"s6", "e2"},
    {"s7", "d1"}, {"s7", "d2"}, {"s8", "e1"}, {"s8", "e2"}, {"a3", "s7"}, {"a3", "s8"},
};

struct Entry {
  const char* root;
  const char* s;
  const char* t;
  std::vector<const char*> set;
};

using Permutation = std::vector<Vertex>;

Permutation swaps_to_permutation(const Instance& inst, std::initializer_list<std::pair<const char*, const char*>> swaps) {
  Permutation p(inst.num_vertices());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<Vertex>(i);
  for (const auto& [a, b] : swaps) {
    Vertex va = inst.vertex(a), vb = inst.vertex(b);
    p[static_cast<std::size_t>(va)] = vb;
    p[static_cast<std::size_t>(vb)] = va;
  }
  return p;
}

// All graph symmetries generated by the in-pair swaps, the b/c exchange and
// the top/bottom mirror, in breadth-first discovery order from the identity.
std::vector<Permutation> gadget_symmetries(const Instance& inst) {
  std::vector<Permutation> gens = {
      swaps_to_permutation(inst, {{"b1", "b2"}}),
      swaps_to_permutation(inst, {{"c1", "c2"}}),
      swaps_to_permutation(inst, {{"d1", "d2"}}),
      swaps_to_permutation(inst, {{"e1", "e2"}}),
      swaps_to_permutation(inst, {{"b1", "c2"}, {"b2", "c1"}, {"s1", "s2"}, {"s3", "s4"},
                                  {"d1", "e2"}, {"d2", "e1"}, {"s5", "s6"}, {"s7", "s8"}}),
      swaps_to_permutation(inst, {{"a1", "a3"}, {"b1", "d1"}, {"b2", "d2"}, {"c1", "e1"},
                                  {"c2", "e2"}, {"s1", "s7"}, {"s2", "s8"}, {"s3", "s5"}, {"s4", "s6"}}),
  };
  Permutation identity(inst.num_vertices());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<Vertex>(i);
  std::vector<Permutation> order{identity};
  std::set<Permutation> seen{identity};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& g : gens) {
      Permutation next(identity.size());
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = g[static_cast<std::size_t>(order[head][i])];
      }
      if (seen.insert(next).second) order.push_back(next);
    }
  }
  return order;
}

std::optional<std::size_t> find_pair(const Instance& inst, Vertex a, Vertex b) {
  for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
    const auto& p = inst.pairs()[i];
    if ((p.s == a && p.t == b) || (p.s == b && p.t == a)) return i;
  }
  return std::nullopt;
}

DualEntry make_entry(const Instance& inst, const Entry& e) {
  DualEntry d;
  d.root = inst.vertex(e.root);
  auto idx = find_pair(inst, inst.vertex(e.s), inst.vertex(e.t));
  if (!idx) throw std::logic_error(std::string("gadget dual references a missing pair ") + e.s + e.t);
  d.pair = *idx;
  d.value = 1;
  for (const char* v : e.set) d.set.push_back(inst.vertex(v));
  std::sort(d.set.begin(), d.set.end());
  return d;
}

std::optional<DualEntry> apply(const Instance& inst, const Permutation& g, const DualEntry& e) {
  auto map = [&](Vertex v) { return g[static_cast<std::size_t>(v)]; };
  const auto& p = inst.pairs()[e.pair];
  auto idx = find_pair(inst, map(p.s), map(p.t));
  if (!idx) return std::nullopt;
  DualEntry out;
  out.root = map(e.root);
  out.pair = *idx;
  out.value = e.value;
  for (Vertex v : e.set) out.set.push_back(map(v));
  std::sort(out.set.begin(), out.set.end());
  return out;
}

// Images of a family of entries (all with the same root) under g; empty if
// some pair has no image in the instance.
std::optional<std::vector<DualEntry>> image(const Instance& inst, const Permutation& g,
                                            const std::vector<DualEntry>& family) {
  std::vector<DualEntry> out;
  for (const auto& e : family) {
    auto m = apply(inst, g, e);
    if (!m) return std::nullopt;
    out.push_back(std::move(*m));
  }
  return out;
}

std::vector<DualEntry> rerooted(std::vector<DualEntry> family, Vertex root) {
  for (auto& e : family) e.root = root;
  return family;
}

bool avoids(const std::vector<DualEntry>& family, Vertex v) {
  for (const auto& e : family) {
    if (std::binary_search(e.set.begin(), e.set.end(), v)) return false;
  }
  return true;
}

}  // namespace

Generated gen_lower_bound(int q) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  Generated g;
  Instance& inst = g.instance;
  for (const char* prefix : {"s", "v", "t"}) {
    for (int i = 1; i <= q; ++i) inst.add_vertex(indexed(prefix, i));
  }
  auto s = [&](int i) { return inst.vertex(indexed("s", i)); };
  auto v = [&](int i) { return inst.vertex(indexed("v", i)); };
  auto t = [&](int i) { return inst.vertex(indexed("t", i)); };
  for (int i = 1; i <= q; ++i) {
    for (int j = 1; j <= q; ++j) {
      inst.add_edge(s(i), v(j), Rational(1));
      inst.add_edge(v(i), t(j), Rational(1));
    }
  }
  std::vector<std::size_t> st, vv;
  for (int i = 1; i <= q; ++i) st.push_back(inst.add_pair(s(i), t(i)));
  for (int i = 1; i < q; ++i) vv.push_back(inst.add_pair(v(i), v(i + 1)));

  const Rational share(1, q);
  for (int i = 1; i <= q; ++i) {
    for (int j = 1; j <= q; ++j) {
      g.solution.set_x(t(i), Arc{s(i), v(j)}, share);
      g.solution.set_x(t(i), Arc{v(j), t(i)}, share);
    }
    g.solution.set_z(t(i), st[static_cast<std::size_t>(i - 1)], Rational(1));
    for (std::size_t k : vv) g.solution.set_z(t(i), k, share);
  }
  return g;
}

GeneratedWithDual gen_gadget(GadgetRep rep) {
  GeneratedWithDual g;
  Instance& inst = g.instance;
  for (const char* v : kGadgetVertices) inst.add_vertex(v);
  for (const auto& e : kGadgetEdges) inst.add_edge(e[0], e[1], Rational(1));
  const bool p1 = rep == GadgetRep::P1;
  const std::size_t pa = inst.add_pair("a1", "a2");
  const std::size_t pb_or_a3 = p1 ? inst.add_pair("a2", "a3") : inst.add_pair("a1", "a3");
  const std::size_t pb = inst.add_pair("b1", "b2");
  const std::size_t pc = inst.add_pair("c1", "c2");
  const std::size_t pd = inst.add_pair("d1", "d2");
  const std::size_t pe = inst.add_pair("e1", "e2");

  auto x = [&](const char* root, std::initializer_list<std::pair<const char*, const char*>> arcs) {
    for (const auto& [t, h] : arcs) g.solution.set_x(inst.vertex(root), Arc{inst.vertex(t), inst.vertex(h)}, Rational(1, 2));
  };
  auto z = [&](const char* root, std::size_t pair, const Rational& value) {
    g.solution.add_z(inst.vertex(root), pair, value);
  };
  const Rational half(1, 2), one(1);

  if (p1) {
    x("b1", {{"a1", "s1"}, {"b2", "s1"}, {"s1", "b1"}, {"s3", "b1"}, {"b2", "s3"}, {"a2", "s3"}});
    x("c2", {{"a1", "s2"}, {"c1", "s2"}, {"s2", "c2"}, {"c1", "s4"}, {"s4", "c2"}, {"a2", "s4"}});
    x("d1", {{"a2", "s5"}, {"d2", "s5"}, {"s5", "d1"}, {"s7", "d1"}, {"d2", "s7"}, {"a3", "s7"}});
    x("e2", {{"a2", "s6"}, {"e1", "s6"}, {"s6", "e2"}, {"e1", "s8"}, {"s8", "e2"}, {"a3", "s8"}});
    z("b1", pb, one);
    z("c2", pc, one);
    z("b1", pa, half);
    z("c2", pa, half);
    z("d1", pd, one);
    z("e2", pe, one);
    z("d1", pb_or_a3, half);
    z("e2", pb_or_a3, half);
  } else {
    x("b1", {{"b2", "s1"}, {"s1", "b1"}});
    x("c2", {{"c1", "s2"}, {"s2", "c2"}});
    x("d1", {{"a1", "s1"}, {"s1", "b2"}, {"b2", "s3"}, {"s3", "a2"}, {"b1", "s3"}, {"a2", "s5"},
             {"d2", "s5"}, {"s5", "d1"}, {"s7", "d1"}, {"d2", "s7"}, {"a3", "s7"}});
    x("e2", {{"a1", "s2"}, {"s2", "c1"}, {"c1", "s4"}, {"s4", "a2"}, {"c2", "s4"}, {"a2", "s6"},
             {"e1", "s6"}, {"s6", "e2"}, {"e1", "s8"}, {"s8", "e2"}, {"a3", "s8"}});
    z("b1", pb, half);
    z("d1", pb, half);
    z("c2", pc, half);
    z("e2", pc, half);
    z("d1", pa, half);
    z("e2", pa, half);
    z("d1", pb_or_a3, half);
    z("e2", pb_or_a3, half);
    z("d1", pd, one);
    z("e2", pe, one);
  }

  // Dual sets drawn for the canonical roots b1, a1, a2; every y value is 1.
  const std::vector<const char*> low = {"a2", "a3", "d1", "d2", "e1", "e2", "s5", "s6", "s7", "s8"};
  const std::vector<const char*> low_open = {"a3", "d1", "d2", "e1", "e2", "s5", "s6", "s7", "s8"};
  const std::vector<const char*> up = {"a1", "b1", "b2", "c1", "c2", "s1", "s2", "s3", "s4"};
  const std::vector<const char*> a3_side = {"a3", "s7", "s8"};
  std::vector<const char*> all_but_a1;
  for (const char* v : kGadgetVertices) {
    if (std::string(v) != "a1") all_but_a1.push_back(v);
  }

  std::vector<Entry> b1_family, a1_family, a2_family;
  auto singles = [](std::vector<Entry>& fam, const char* root, const char* s, const char* t) {
    fam.push_back({root, s, t, {s}});
    fam.push_back({root, s, t, {t}});
  };
  if (p1) {
    for (const auto& sets : {std::vector<std::vector<const char*>>{{"a1"}, low}}) {
      for (const auto& set : sets) b1_family.push_back({"b1", "a1", "a2", set});
    }
    b1_family.push_back({"b1", "b1", "b2", {"b2"}});
    b1_family.push_back({"b1", "b1", "b2", {"b2", "s1", "s3"}});
    singles(b1_family, "b1", "c1", "c2");
    b1_family.push_back({"b1", "a2", "a3", {"a3"}});
    b1_family.push_back({"b1", "a2", "a3", low_open});
    singles(b1_family, "b1", "d1", "d2");
    singles(b1_family, "b1", "e1", "e2");

    a1_family.push_back({"a1", "a1", "a2", all_but_a1});
    a1_family.push_back({"a1", "a1", "a2", low});
    singles(a1_family, "a1", "b1", "b2");
    singles(a1_family, "a1", "c1", "c2");
    a1_family.push_back({"a1", "a2", "a3", {"a3"}});
    a1_family.push_back({"a1", "a2", "a3", low_open});
    singles(a1_family, "a1", "d1", "d2");
    singles(a1_family, "a1", "e1", "e2");

    a2_family.push_back({"a2", "a1", "a2", {"a1"}});
    a2_family.push_back({"a2", "a1", "a2", up});
    singles(a2_family, "a2", "b1", "b2");
    singles(a2_family, "a2", "c1", "c2");
    a2_family.push_back({"a2", "a2", "a3", {"a3"}});
    a2_family.push_back({"a2", "a2", "a3", low_open});
    singles(a2_family, "a2", "d1", "d2");
    singles(a2_family, "a2", "e1", "e2");
  } else {
    for (const auto& set : {std::vector<const char*>{"a1"}, low, a3_side, std::vector<const char*>{"a3"}, low_open}) {
      b1_family.push_back({"b1", "a1", "a3", set});
    }
    b1_family.push_back({"b1", "b1", "b2", {"b2"}});
    b1_family.push_back({"b1", "b1", "b2", {"b2", "s1", "s3"}});
    singles(b1_family, "b1", "c1", "c2");
    singles(b1_family, "b1", "d1", "d2");
    singles(b1_family, "b1", "e1", "e2");

    for (const auto& set : {all_but_a1, low, a3_side, std::vector<const char*>{"a3"}, low_open}) {
      a1_family.push_back({"a1", "a1", "a3", set});
    }
    singles(a1_family, "a1", "b1", "b2");
    singles(a1_family, "a1", "c1", "c2");
    singles(a1_family, "a1", "d1", "d2");
    singles(a1_family, "a1", "e1", "e2");

    for (const auto& set : {std::vector<const char*>{"a1"}, up, std::vector<const char*>{"a3"}, a3_side, low_open}) {
      a2_family.push_back({"a2", "a1", "a3", set});
    }
    singles(a2_family, "a2", "b1", "b2");
    singles(a2_family, "a2", "c1", "c2");
    singles(a2_family, "a2", "d1", "d2");
    singles(a2_family, "a2", "e1", "e2");
  }

  auto build = [&](const std::vector<Entry>& fam) {
    std::vector<DualEntry> out;
    for (const auto& e : fam) out.push_back(make_entry(inst, e));
    return out;
  };
  const std::vector<DualEntry> canon_b1 = build(b1_family);
  const std::vector<DualEntry> canon_a1 = build(a1_family);
  const std::vector<DualEntry> canon_a2 = build(a2_family);
  const auto symmetries = gadget_symmetries(inst);

  auto family_for = [&](Vertex r) -> std::vector<DualEntry> {
    const std::string& label = inst.label(r);
    if (label == "a2") return canon_a2;
    const bool a_side = label == "a1" || label == "a3";
    const auto& canon = a_side ? canon_a1 : canon_b1;
    const Vertex canon_root = canon.front().root;
    const bool steiner = label.front() == 's';
    for (const auto& g : symmetries) {
      if (!steiner && g[static_cast<std::size_t>(canon_root)] != r) continue;
      auto mapped = image(inst, g, canon);
      if (!mapped) continue;
      if (steiner) {
        if (!avoids(*mapped, r)) continue;
        return rerooted(std::move(*mapped), r);
      }
      return *mapped;
    }
    throw std::logic_error("no symmetric dual family for root " + label);
  };

  for (std::size_t i = 0; i < inst.pairs().size(); ++i) g.dual.alpha[i] = 2;
  if (!p1) {
    g.dual.alpha[pb_or_a3] = 5;
    g.dual.alpha[pa] = 0;
  }
  for (Vertex r = 0; static_cast<std::size_t>(r) < inst.num_vertices(); ++r) {
    for (auto& e : family_for(r)) g.dual.y.push_back(std::move(e));
  }
  return g;
}

Generated gen_figure1() {
  Generated g;
  Instance& inst = g.instance;
  for (const char* v : {"a1", "a2", "b1", "b2", "c1", "c2", "s1", "s2"}) inst.add_vertex(v);
  for (const auto& [u, v] : std::initializer_list<std::pair<const char*, const char*>>{
           {"a1", "s1"}, {"c1", "s1"}, {"s1", "c2"}, {"c1", "s2"}, {"s2", "c2"}, {"a2", "s2"},
           {"b1", "b2"}, {"a1", "b1"}, {"a2", "b2"}}) {
    inst.add_edge(u, v, Rational(1));
  }
  const std::size_t pa = inst.add_pair("a1", "a2");
  const std::size_t pb = inst.add_pair("b1", "b2");
  const std::size_t pc = inst.add_pair("c1", "c2");
  const Rational half(1, 2);
  auto x = [&](const char* root, std::initializer_list<std::pair<const char*, const char*>> arcs) {
    for (const auto& [t, h] : arcs) g.solution.set_x(inst.vertex(root), Arc{inst.vertex(t), inst.vertex(h)}, half);
  };
  x("c2", {{"a1", "s1"}, {"c1", "s1"}, {"s1", "c2"}, {"c1", "s2"}, {"s2", "c2"}, {"a2", "s2"}});
  x("b1", {{"b2", "b1"}});
  x("b2", {{"a1", "b1"}, {"b1", "b2"}, {"a2", "b2"}});
  g.solution.set_z(inst.vertex("c2"), pc, Rational(1));
  g.solution.set_z(inst.vertex("c2"), pa, half);
  g.solution.set_z(inst.vertex("b1"), pb, half);
  g.solution.set_z(inst.vertex("b2"), pb, half);
  g.solution.set_z(inst.vertex("b2"), pa, half);
  return g;
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound) by rejection, independent of library distributions.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// One integral solution: per nontrivial demand component, the minimal subtree
// of a random spanning tree that spans the component, oriented into a random
// member of the component.
BcrSolution integral_solution(const Instance& inst, Draw& draw) {
  std::vector<Edge> edges;
  for (const auto& [e, c] : inst.edges()) edges.push_back(e);
  draw.shuffle(edges);
  const std::size_t n = inst.num_vertices();
  DisjointSets sets(n);
  std::vector<std::vector<Vertex>> tree(n);
  for (const auto& e : edges) {
    if (sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
      tree[static_cast<std::size_t>(e.u)].push_back(e.v);
      tree[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
  }

  BcrSolution sol;
  DemandGraph dg = demand_graph(inst);
  for (std::size_t c : dg.nontrivial_components()) {
    const auto& members = dg.components[c];
    Vertex root = members[draw.below(members.size())];
    std::vector<Vertex> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<Vertex> queue{root};
    seen[static_cast<std::size_t>(root)] = 1;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : tree[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        parent[static_cast<std::size_t>(w)] = u;
        queue.push_back(w);
      }
    }
    std::vector<char> used(n, 0);
    for (Vertex m : members) {
      for (Vertex v = m; v != root && !used[static_cast<std::size_t>(v)]; v = parent[static_cast<std::size_t>(v)]) {
        used[static_cast<std::size_t>(v)] = 1;
        sol.set_x(root, Arc{v, parent[static_cast<std::size_t>(v)]}, Rational(1));
      }
    }
    for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
      if (dg.component_of[static_cast<std::size_t>(inst.pairs()[i].s)] == c) sol.set_z(root, i, Rational(1));
    }
  }
  return sol;
}

}  // namespace

Generated gen_random_halfintegral(std::uint64_t seed, int n, const Rational& edge_density, int pair_count) {
  if (n < 4) throw std::invalid_argument("random instances need at least 4 vertices");
  if (pair_count < 0) throw std::invalid_argument("pair count must be nonnegative");
  if (edge_density < 0 || edge_density > 1) throw std::invalid_argument("edge density must lie in [0,1]");
  if (!edge_density.get_den().fits_ulong_p()) throw std::invalid_argument("edge density denominator too large");

  Draw draw(seed);
  Generated g;
  Instance& inst = g.instance;
  for (int i = 1; i <= n; ++i) inst.add_vertex("v" + std::to_string(i));

  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  draw.shuffle(perm);
  auto random_cost = [&] { return Rational(static_cast<long>(1 + draw.below(10))); };
  for (std::size_t i = 1; i < perm.size(); ++i) {
    inst.add_edge(perm[i], perm[draw.below(i)], random_cost());
  }
  const unsigned long den = edge_density.get_den().get_ui();
  const mpz_class& num = edge_density.get_num();
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (inst.has_edge(a, b)) continue;
      bool take = num > static_cast<unsigned long>(draw.below(den));
      Rational c = random_cost();
      if (take) inst.add_edge(a, b, c);
    }
  }

  std::set<std::pair<Vertex, Vertex>> chosen;
  int attempts = 0;
  while (static_cast<int>(chosen.size()) < pair_count) {
    if (++attempts > 1000) throw GenerationFailed("could not draw " + std::to_string(pair_count) + " distinct pairs");
    auto s = static_cast<Vertex>(draw.below(static_cast<std::uint64_t>(n)));
    auto t = static_cast<Vertex>(draw.below(static_cast<std::uint64_t>(n)));
    if (s == t || !chosen.insert({std::min(s, t), std::max(s, t)}).second) continue;
    inst.add_pair(s, t);
  }

  BcrSolution first = integral_solution(inst, draw);
  BcrSolution second = integral_solution(inst, draw);
  const Rational half(1, 2);
  for (const BcrSolution* part : {&first, &second}) {
    for (const auto& [r, xr] : part->x) {
      for (const auto& [arc, value] : xr) g.solution.add_x(r, arc, value * half);
    }
    for (const auto& [r, zr] : part->z) {
      for (const auto& [i, value] : zr) g.solution.add_z(r, i, value * half);
    }
  }
  return g;
}

}  // namespace bcr
