#include <doctest.h>

#include <algorithm>
#include <utility>

#include "bcr/corpus.hpp"
#include "bcr/density.hpp"
#include "bcr/errors.hpp"
#include "bcr/generators.hpp"
#include "bcr/structuring.hpp"
#include "oracles.hpp"

using namespace bcr;

namespace {

std::vector<Vertex> vs(const Instance& inst, std::initializer_list<const char*> labels) {
  std::vector<Vertex> out;
  for (const char* l : labels) out.push_back(inst.vertex(l));
  std::sort(out.begin(), out.end());
  return out;
}

// Cycle v0 -> v1 -> v2 -> v3 -> v0 of 1/2 arcs under one root.
std::pair<Instance, BcrSolution> half_cycle() {
  Instance inst = parse_instance_string("vertices p q r s\nedge p q 1\nedge q r 1\nedge r s 1\nedge s p 1\n");
  BcrSolution sol;
  for (auto [a, b] : {std::pair{"p", "q"}, {"q", "r"}, {"r", "s"}, {"s", "p"}}) {
    sol.set_x(0, Arc{inst.vertex(a), inst.vertex(b)}, Rational(1, 2));
  }
  return {inst, sol};
}

}  // namespace

TEST_CASE("density_of examples") {
  auto fig = gen_figure1();
  CHECK(density_of(fig.solution, vs(fig.instance, {"b1", "b2"})) == 1);
  CHECK(density_of(fig.solution, vs(fig.instance, {"a1", "s1"})) == Rational(1, 2));
  CHECK(density_of(fig.solution, vs(fig.instance, {"a1", "c1"})) == 0);
  const Vertex one[] = {0};
  CHECK_THROWS_AS(density_of(fig.solution, one), TooSmall);
  const Vertex same[] = {2, 2};
  CHECK_THROWS_AS(density_of(fig.solution, same), TooSmall);
}

TEST_CASE("densest subgraph of the eight-vertex example") {
  auto fig = gen_figure1();
  DensityResult fast = densest_subgraph(fig.solution, fig.instance);
  CHECK(fast.set == vs(fig.instance, {"b1", "b2"}));
  CHECK(fast.density == 1);
  DensityResult slow = densest_subgraph_bruteforce(fig.solution, fig.instance);
  CHECK(slow.set == fast.set);
  CHECK(slow.density == 1);
  CHECK(oracle::densest_value(fig.solution, fig.instance.num_vertices()) == 1);
}

TEST_CASE("densest subgraph small cases") {
  Instance two = parse_instance_string("vertices a b c\nedge a b 1\nedge b c 1\n");
  BcrSolution opposite;
  opposite.set_x(0, Arc{0, 1}, Rational(1, 2));
  opposite.set_x(0, Arc{1, 0}, Rational(1, 2));
  CHECK(densest_subgraph(opposite, two).set == std::vector<Vertex>{0, 1});
  CHECK(densest_subgraph(opposite, two).density == 1);

  BcrSolution single;
  single.set_x(2, Arc{1, 2}, Rational(1));
  DensityResult r = densest_subgraph_bruteforce(single, two);
  CHECK(r.set == std::vector<Vertex>{1, 2});
  CHECK(r.density == 1);

  auto [cycle, sol] = half_cycle();
  DensityResult c = densest_subgraph_bruteforce(sol, cycle);
  CHECK(c.set == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(c.density == Rational(2, 3));
  CHECK(densest_subgraph(sol, cycle).density == Rational(2, 3));

  CHECK_THROWS_AS(densest_subgraph(BcrSolution{}, two), NoSupport);
  CHECK_THROWS_AS(densest_subgraph_bruteforce(BcrSolution{}, two), NoSupport);
  CHECK_THROWS_AS(densest_subgraph_bruteforce(sol, cycle, 3), TooLarge);
}

TEST_CASE("anchored search contains its anchor") {
  auto [cycle, sol] = half_cycle();
  DensityResult r = anchored_densest(sol, cycle, Edge::of(0, 1));
  CHECK(r.density == Rational(2, 3));
  CHECK(r.anchor == Edge::of(0, 1));
  auto fig = gen_figure1();
  Edge anchor = Edge::of(fig.instance.vertex("a1"), fig.instance.vertex("s1"));
  DensityResult f = anchored_densest(fig.solution, fig.instance, anchor);
  CHECK(std::binary_search(f.set.begin(), f.set.end(), anchor.u));
  CHECK(std::binary_search(f.set.begin(), f.set.end(), anchor.v));
  CHECK(f.density == density_of(fig.solution, f.set));
  CHECK(f.density <= 1);
}

TEST_CASE("projection multigraph") {
  auto fig = gen_figure1();
  ProjectionMultigraph pm = projection_multigraph(fig.solution, fig.instance.num_vertices());
  CHECK(pm.multiplicity.at(Edge::of(fig.instance.vertex("b1"), fig.instance.vertex("b2"))) == 2);
  CHECK(pm.density(vs(fig.instance, {"b1", "b2"})) == 1);

  // Degrees summed independently from the undirected projection.
  std::vector<std::int64_t> degree(fig.instance.num_vertices(), 0);
  for (const auto& [e, value] : undirected_projection(fig.solution)) {
    Rational twice = 2 * value;
    REQUIRE(twice.get_den() == 1);
    degree[static_cast<std::size_t>(e.u)] += twice.get_num().get_si();
    degree[static_cast<std::size_t>(e.v)] += twice.get_num().get_si();
  }
  CHECK(pm.degree == degree);
  auto cls = classify_vertices(pm);
  for (std::size_t v = 0; v < degree.size(); ++v) {
    VertexClass expect = degree[v] == 0 ? VertexClass::Nonsupport
                         : degree[v] >= 3 ? VertexClass::HighDegree
                                          : VertexClass::LowDegree;
    CHECK(cls[v] == expect);
  }

  CHECK(projection_multigraph(BcrSolution{}, 3).multiplicity.empty());
  BcrSolution unit;
  unit.set_x(1, Arc{0, 1}, Rational(1));
  ProjectionMultigraph u = projection_multigraph(unit, 3);
  CHECK(u.multiplicity.at(Edge::of(0, 1)) == 2);
  CHECK(classify_vertices(u) == std::vector<VertexClass>{VertexClass::LowDegree, VertexClass::LowDegree,
                                                         VertexClass::Nonsupport});
  CHECK_FALSE(find_structure_violation(u).has_value());

  CHECK_THROWS_AS(projection_multigraph(gen_lower_bound(4).solution, 12), NotHalfIntegral);
}

TEST_CASE("structure violation on a lone half edge") {
  BcrSolution sol;
  sol.set_x(1, Arc{0, 1}, Rational(1, 2));
  CHECK(find_structure_violation(projection_multigraph(sol, 2)) == Vertex{0});
}

TEST_CASE("densest subgraph agrees with exhaustive search on the corpus") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Generated g = corpus_instance(seed, 6 + static_cast<int>(seed % 7));
    MetricClosure mc = metric_closure(g.instance);
    const Instance& metric = mc.instance();
    BcrSolution reduced = fully_reduce(well_structure(g.solution, metric).first, metric);
    for (const BcrSolution* sol : {&std::as_const(g.solution), &std::as_const(reduced)}) {
      DensityResult fast = densest_subgraph(*sol, metric);
      CHECK(fast.density == oracle::densest_value(*sol, metric.num_vertices()));
      CHECK(fast.density == density_of(*sol, fast.set));
      DensityResult slow = densest_subgraph_bruteforce(*sol, metric);
      CHECK(slow.density == fast.density);
      CHECK(slow.set == fast.set);

      // Every anchored optimum is dominated, and some anchor attains it.
      Rational best(0);
      for (const auto& [e, value] : undirected_projection(*sol)) {
        DensityResult a = anchored_densest(*sol, metric, e);
        CHECK(a.density <= fast.density);
        CHECK(a.density == density_of(*sol, a.set));
        best = std::max(best, a.density);
      }
      CHECK(best == fast.density);
    }
    CHECK(densest_subgraph(reduced, metric).density >= Rational(9, 16));
    CHECK_FALSE(find_structure_violation(projection_multigraph(reduced, metric.num_vertices())).has_value());
  }
}
