#include <doctest.h>

#include <set>

#include "bcr/errors.hpp"
#include "bcr/generators.hpp"
#include "oracles.hpp"

using namespace bcr;

TEST_CASE("gap family sizes and costs") {
  for (int q = 1; q <= 5; ++q) {
    auto lb = gen_lower_bound(q);
    CHECK(lb.instance.num_vertices() == static_cast<std::size_t>(3 * q));
    CHECK(lb.instance.edges().size() == static_cast<std::size_t>(2 * q * q));
    CHECK(lb.instance.pairs().size() == static_cast<std::size_t>(2 * q - 1));
    CHECK(cost(lb.solution, lb.instance) == 2 * q);
    CHECK(verify_primal(lb.solution, lb.instance).feasible());
    if (q <= 4) CHECK(oracle::primal_feasible(lb.solution, lb.instance));
  }
  CHECK_THROWS_AS(gen_lower_bound(0), std::invalid_argument);
}

TEST_CASE("gadget shape") {
  for (auto rep : {GadgetRep::P1, GadgetRep::P2}) {
    auto g = gen_gadget(rep);
    CHECK(g.instance.num_vertices() == 19);
    CHECK(terminals(g.instance).size() == 11);
    CHECK(g.instance.pairs().size() == 6);
    for (const auto& [e, c] : g.instance.edges()) CHECK(c == 1);
    for (const auto& entry : g.dual.y) {
      CHECK(entry.value >= 0);
      CHECK(std::is_sorted(entry.set.begin(), entry.set.end()));
    }
  }
}

TEST_CASE("eight-vertex example") {
  auto fig = gen_figure1();
  CHECK(fig.instance.num_vertices() == 8);
  CHECK(terminals(fig.instance).size() == 6);
  CHECK(cost(fig.solution, fig.instance) == 5);
  CHECK(oracle::primal_feasible(fig.solution, fig.instance));
}

TEST_CASE("random generator") {
  auto a = gen_random_halfintegral(42, 8, Rational(3, 10), 3);
  auto b = gen_random_halfintegral(42, 8, Rational(3, 10), 3);
  CHECK(a.instance == b.instance);
  CHECK(a.solution == b.solution);
  auto c = gen_random_halfintegral(43, 8, Rational(3, 10), 3);
  CHECK_FALSE((c.instance == a.instance && c.solution == a.solution));

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const int pairs = 1 + static_cast<int>(seed % 4);
    auto g = gen_random_halfintegral(seed, n, Rational(1, 2), pairs);
    const Instance& inst = g.instance;
    CHECK(inst.num_vertices() == static_cast<std::size_t>(n));
    CHECK(inst.label(0) == "v1");
    CHECK(inst.edges().size() >= static_cast<std::size_t>(n - 1));
    for (const auto& [e, cost] : inst.edges()) {
      CHECK(cost >= 1);
      CHECK(cost <= 10);
      CHECK(cost.get_den() == 1);
    }
    std::set<Edge> seen;
    for (const auto& p : inst.pairs()) seen.insert(Edge::of(p.s, p.t));
    CHECK(seen.size() == static_cast<std::size_t>(pairs));
    CHECK(is_half_integral(g.solution));
    CHECK(oracle::primal_feasible(g.solution, inst));
    CHECK_NOTHROW(metric_closure(inst));
  }

  CHECK_THROWS_AS(gen_random_halfintegral(1, 3, Rational(1, 2), 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_halfintegral(1, 4, Rational(1, 2), 7), GenerationFailed);
}
