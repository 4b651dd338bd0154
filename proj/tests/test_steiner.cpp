#include <doctest.h>

#include <algorithm>
#include <random>

#include "bcr/errors.hpp"
#include "bcr/generators.hpp"
#include "bcr/steiner_transform.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bcr;

namespace {

// The gadget with only its a-component pairs kept.
Instance a_component(GadgetRep rep) {
  Instance full = gen_gadget(rep).instance;
  Instance out;
  for (const auto& l : full.labels()) out.add_vertex(l);
  for (const auto& [e, c] : full.edges()) out.add_edge(e.u, e.v, c);
  for (const auto& p : full.pairs()) {
    if (full.label(p.s)[0] == 'a') out.add_pair(p.s, p.t);
  }
  return out;
}

std::vector<Vertex> component_terminals(const Instance& inst) {
  DemandGraph dg = demand_graph(inst);
  return dg.components[dg.nontrivial_components().front()];
}

Rational out_mass(const ArcValues& x, std::uint32_t mask) {
  Rational total(0);
  for (const auto& [arc, v] : x) {
    if ((mask >> arc.tail & 1u) && !(mask >> arc.head & 1u)) total += v;
  }
  return total;
}

}  // namespace

TEST_CASE("arborescence shapes") {
  Instance star = parse_instance_string(
      "vertices r a b c\nedge r a 1\nedge r b 1\nedge r c 1\npair r a\npair b r\npair r c\n");
  Arborescence s = build_arborescence(star);
  CHECK(s.root == star.vertex("a"));
  Arborescence sr = build_arborescence(star, star.vertex("r"));
  CHECK(sr.arcs == std::vector<Arc>{{0, 1}, {0, 2}, {0, 3}});
  CHECK(sr.order == std::vector<Vertex>{0, 1, 2, 3});

  Instance path = parse_instance_string("vertices a b c\nedge a b 1\nedge b c 1\npair a b\npair b c\n");
  Arborescence p = build_arborescence(path);
  CHECK(p.arcs == std::vector<Arc>{{0, 1}, {1, 2}});
  CHECK(p.order == std::vector<Vertex>{0, 1, 2});

  Instance gad = a_component(GadgetRep::P1);
  Vertex a1 = gad.vertex("a1"), a2 = gad.vertex("a2"), a3 = gad.vertex("a3");
  Arborescence g = build_arborescence(gad, a1);
  CHECK(g.arcs == std::vector<Arc>{{a1, a2}, {a2, a3}});
  Arborescence g2 = build_arborescence(a_component(GadgetRep::P2), a1);
  CHECK(g2.arcs == std::vector<Arc>{{a1, a2}, {a1, a3}});

  CHECK_THROWS_AS(build_arborescence(gen_figure1().instance), NotSteinerTree);
  CHECK_THROWS_AS(build_arborescence(gad, gad.vertex("b1")), InvalidInstance);
}

TEST_CASE("reorientation with no demand at the source is the identity") {
  Instance path = parse_instance_string("vertices a b c\nedge a b 1\nedge b c 1\npair a b\npair b c\n");
  BcrSolution sol;
  sol.set_x(1, Arc{0, 1}, Rational(1));
  SourceReorientation r = reorient_source(sol, path, 1, build_arborescence(path));
  CHECK(r.flow.empty());
  CHECK(r.reoriented == sol.x_of(1));
  CHECK(r.lambda == std::vector<Rational>{0, 0, 0});
}

TEST_CASE("reorientation on a three-terminal path") {
  Instance path = parse_instance_string("vertices a b c\nedge a b 1\nedge b c 1\npair a b\npair b c\n");
  Vertex a = 0, b = 1, c = 2;
  BcrSolution sol;
  sol.set_z(c, 0, Rational(1));
  sol.set_z(c, 1, Rational(1));
  sol.set_x(c, Arc{a, b}, Rational(1));
  sol.set_x(c, Arc{b, c}, Rational(1));
  REQUIRE(oracle::primal_feasible(sol, path));

  SourceReorientation r = reorient_source(sol, path, c, build_arborescence(path));
  CHECK(r.lambda == std::vector<Rational>{1, 1, 1});
  CHECK(r.mu == std::vector<Rational>{1, 0, 0});
  CHECK(r.reoriented == ArcValues{{Arc{c, b}, 1}, {Arc{b, a}, 1}});

  TreeBcrSolution t = to_tree_bcr(sol, path);
  CHECK(t.root == a);
  CHECK(t.x == ArcValues{{Arc{c, b}, 1}, {Arc{b, a}, 1}});
}

TEST_CASE("an in-tree at the root is kept") {
  Instance path = parse_instance_string("vertices a b c\nedge a b 1\nedge b c 1\npair a b\npair b c\n");
  BcrSolution sol;
  sol.set_z(0, 0, Rational(1));
  sol.set_z(0, 1, Rational(1));
  sol.set_x(0, Arc{2, 1}, Rational(1));
  sol.set_x(0, Arc{1, 0}, Rational(1));
  TreeBcrSolution t = to_tree_bcr(sol, path);
  CHECK(t.x == sol.x_of(0));
  CHECK(oracle::tree_as_forest(t, path) == sol);
}

TEST_CASE("transform of single-component instances") {
  std::mt19937_64 rng(77);
  int audited = 0;
  for (const Generated& g : fixture::single_component(60)) {
    const Instance& inst = g.instance;
    auto terms = component_terminals(inst);
    Arborescence arb = build_arborescence(inst);
    TreeBcrSolution t = to_tree_bcr(g.solution, inst);
    CHECK(t.root == arb.root);
    CHECK(cost(t, inst) == cost(g.solution, inst));
    CHECK(verify_tree_bcr(t, terms, inst).feasible());
    CHECK(oracle::tree_feasible(t.x, t.root, terms, inst));

    const std::size_t n = inst.num_vertices();
    std::vector<std::size_t> position(n, n);
    for (std::size_t i = 0; i < arb.order.size(); ++i) position[static_cast<std::size_t>(arb.order[i])] = i;

    for (Vertex w : g.solution.roots()) {
      SourceReorientation r = reorient_source(g.solution, inst, w, arb);
      CHECK(cost(r.reoriented, inst) == cost(g.solution.x_of(w), inst));

      // lambda and mu from raw z.
      Rational prev(0);
      for (std::size_t i = 0; i < arb.order.size(); ++i) {
        Rational lam(0);
        for (std::size_t p = 0; p < inst.pairs().size(); ++p) {
          const Pair& pair = inst.pairs()[p];
          if (position[static_cast<std::size_t>(pair.s)] <= i || position[static_cast<std::size_t>(pair.t)] <= i) {
            lam = std::max(lam, g.solution.z_at(w, p));
          }
        }
        CHECK(r.lambda[i] == lam);
        CHECK(r.mu[i] == lam - prev);
        CHECK(r.mu[i] >= 0);
        prev = lam;
      }

      // Random sets U avoiding r0 and meeting R: the first terminal of U in
      // order is entered by an arborescence arc whose pair must be covered.
      std::uniform_int_distribution<std::uint32_t> draw(1, (1u << n) - 1);
      for (int sample = 0; sample < 8; ++sample) {
        std::uint32_t mask = draw(rng) & ~(1u << arb.root);
        std::size_t j = n;
        for (Vertex v : terms) {
          if (mask >> v & 1u) j = std::min(j, position[static_cast<std::size_t>(v)]);
        }
        if (j == n) continue;
        Vertex rj = arb.order[j];
        auto in = std::find_if(arb.arcs.begin(), arb.arcs.end(), [&](const Arc& a) { return a.head == rj; });
        REQUIRE(in != arb.arcs.end());
        auto pit = std::find_if(inst.pairs().begin(), inst.pairs().end(), [&](const Pair& p) {
          return p.contains(in->tail) && p.contains(rj);
        });
        REQUIRE(pit != inst.pairs().end());
        auto pidx = static_cast<std::size_t>(pit - inst.pairs().begin());
        CHECK(out_mass(r.reoriented, mask) >= g.solution.z_at(w, pidx));
        ++audited;
      }
    }
  }
  CHECK(audited >= 200);
}

TEST_CASE("transform of the gadget a-component") {
  for (auto rep : {GadgetRep::P1, GadgetRep::P2}) {
    Instance inst = a_component(rep);
    auto full = gen_gadget(rep);
    // The full solution restricted to the roots serving a-pairs, with z for
    // the kept pairs only.
    BcrSolution sol;
    for (const auto& [r, zr] : full.solution.z) {
      for (const auto& [i, v] : zr) {
        const Pair& p = full.instance.pairs()[i];
        if (full.instance.label(p.s)[0] != 'a') continue;
        sol.set_z(r, i, v);
        for (const auto& [arc, x] : full.solution.x_of(r)) sol.set_x(r, arc, x);
      }
    }
    REQUIRE(verify_primal(sol, inst).feasible());
    TreeBcrSolution t = to_tree_bcr(sol, inst);
    auto terms = component_terminals(inst);
    CHECK(verify_tree_bcr(t, terms, inst).feasible());
    CHECK(cost(t, inst) == cost(sol, inst));
  }
}
