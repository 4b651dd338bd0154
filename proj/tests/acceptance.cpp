// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "bcr/corpus.hpp"
#include "bcr/density.hpp"
#include "bcr/errors.hpp"
#include "bcr/flow.hpp"
#include "bcr/forest.hpp"
#include "bcr/generators.hpp"
#include "bcr/lp_solver.hpp"
#include "bcr/rounding.hpp"
#include "bcr/steiner_transform.hpp"
#include "bcr/structuring.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bcr;

namespace {

constexpr std::uint64_t kCorpusSeeds = 200;

// Collects failure notes for one criterion.
struct Check {
  int failures = 0;
  std::ostringstream notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures < 5) notes << "\n    " << what;
    ++failures;
  }
};

struct CorpusEntry {
  std::uint64_t seed;
  Generated gen;
  MetricClosure closure;
};

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  for (std::uint64_t seed = 1; seed <= kCorpusSeeds; ++seed) {
    Generated g = corpus_instance(seed, 6 + static_cast<int>(seed % 7));
    MetricClosure mc = metric_closure(g.instance);
    out.push_back({seed, std::move(g), std::move(mc)});
  }
  return out;
}

std::string tag(std::uint64_t seed) { return "seed " + std::to_string(seed) + ": "; }

void criterion_1(Check& c) {
  const Rational expected[] = {12, 13};
  Rational lp[2];
  int k = 0;
  for (auto rep : {GadgetRep::P1, GadgetRep::P2}) {
    auto g = gen_gadget(rep);
    std::string name = rep == GadgetRep::P1 ? "P1" : "P2";
    Verdict primal = verify_primal(g.solution, g.instance);
    Verdict dual = verify_dual(g.dual, g.instance);
    c.expect(primal.feasible(), name + " primal infeasible: " + primal.describe(g.instance));
    c.expect(dual.feasible(), name + " dual infeasible: " + dual.describe(g.instance));
    Rational pc = cost(g.solution, g.instance);
    c.expect(pc == expected[k], name + " primal cost " + format_fraction(pc));
    c.expect(dual.value == expected[k], name + " dual value " + format_fraction(dual.value));
    ForestLpResult r = solve_forest_bcr(g.instance);
    c.expect(r.status == LpStatus::Optimal, name + " LP hit the round cap");
    c.expect(r.value == expected[k], name + " LP value " + format_fraction(r.value));
    lp[k] = r.value;
    ++k;
  }
  c.expect(same_representation(gen_gadget(GadgetRep::P1).instance, gen_gadget(GadgetRep::P2).instance),
           "P1 and P2 are not the same representation");
  std::cout << "    values: P1 " << format_fraction(lp[0]) << ", P2 " << format_fraction(lp[1]) << '\n';
}

void criterion_2(Check& c) {
  for (int q = 1; q <= 3; ++q) {
    auto lb = gen_lower_bound(q);
    auto [opt, forest] = brute_force_opt(lb.instance);
    c.expect(opt == 3 * q - 1, "q=" + std::to_string(q) + " brute force " + format_fraction(opt));
    c.expect(verify_primal(lb.solution, lb.instance).feasible(), "q=" + std::to_string(q) + " LP solution infeasible");
    c.expect(oracle::primal_feasible(lb.solution, lb.instance),
             "q=" + std::to_string(q) + " LP solution fails enumeration");
    c.expect(cost(lb.solution, lb.instance) == 2 * q, "q=" + std::to_string(q) + " LP cost");
  }
  Rational ratio8;
  for (int q = 1; q <= 8; ++q) {
    auto lb = gen_lower_bound(q);
    RoundingResult r = round_solution(lb.solution, lb.instance);
    std::string name = "q=" + std::to_string(q);
    c.expect(check_forest(r.forest, lb.instance).feasible, name + " rounded forest infeasible");
    c.expect(oracle::connects_all_pairs(r.forest, lb.instance), name + " rounded forest fails BFS");
    Rational fc = forest_cost(r.forest, lb.instance);
    c.expect(fc == 3 * q - 1, name + " rounded cost " + format_fraction(fc));
    if (q == 8) ratio8 = fc / cost(lb.solution, lb.instance);
  }
  c.expect(ratio8 >= Rational(23, 16), "ratio at q=8 is " + format_fraction(ratio8));
  std::cout << "    ratio at q=8: " << format_fraction(ratio8) << " = " << ratio8.get_d() << '\n';
}

void corpus_rounding(const std::vector<CorpusEntry>& corpus, Check& c3, Check& c4) {
  Rational worst(0);
  std::size_t levels = 0;
  for (const auto& e : corpus) {
    const Instance& inst = e.gen.instance;
    RatioReport rep;
    try {
      rep = check_ratio(e.gen.solution, inst);
    } catch (const RatioExceeded& ex) {
      c3.expect(false, tag(e.seed) + ex.what());
      continue;
    } catch (const Error& ex) {
      c3.expect(false, tag(e.seed) + ex.what());
      continue;
    }
    const EdgeSet& forest = rep.result.forest;
    c3.expect(check_forest(forest, inst).feasible, tag(e.seed) + "forest infeasible");
    c3.expect(oracle::connects_all_pairs(forest, inst), tag(e.seed) + "forest fails BFS");
    Rational fc = forest_cost(forest, inst);
    Rational lp = cost(e.gen.solution, inst);
    c3.expect(fc <= Rational(16, 9) * lp,
              tag(e.seed) + "rounded " + format_fraction(fc) + " against LP " + format_fraction(lp));
    if (lp > 0) worst = std::max(worst, Rational(fc / lp));
    for (const auto& level : rep.result.trace.levels) {
      ++levels;
      c4.expect(level.density > 0 && level.mst_cost * level.density <= level.inside_cost,
                tag(e.seed) + "level with " + std::to_string(level.vertex_count) + " vertices: mst " +
                    format_fraction(level.mst_cost) + ", inside " + format_fraction(level.inside_cost) +
                    ", density " + format_fraction(level.density));
    }
  }
  std::cout << "    corpus: " << corpus.size() << " seeds, worst ratio " << format_fraction(worst) << ", "
            << levels << " levels\n";
}

// Degree >= 2 and, unless some parallel pair exists, high degree at v or a
// neighbour; recomputed from the multiplicities.
bool structure_holds(const ProjectionMultigraph& pm, std::size_t n, Vertex& bad) {
  std::vector<std::int64_t> degree(n, 0);
  std::vector<char> parallel(n, 0);
  for (const auto& [e, m] : pm.multiplicity) {
    degree[static_cast<std::size_t>(e.u)] += m;
    degree[static_cast<std::size_t>(e.v)] += m;
    if (m >= 2) parallel[static_cast<std::size_t>(e.u)] = parallel[static_cast<std::size_t>(e.v)] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 0) continue;
    bad = static_cast<Vertex>(v);
    if (degree[v] < 2) return false;
    if (parallel[v] || degree[v] >= 3) continue;
    bool near_high = false;
    for (const auto& [e, m] : pm.multiplicity) {
      if (e.u == bad && degree[static_cast<std::size_t>(e.v)] >= 3) near_high = true;
      if (e.v == bad && degree[static_cast<std::size_t>(e.u)] >= 3) near_high = true;
    }
    if (!near_high) return false;
  }
  return true;
}

void corpus_structure(const std::vector<CorpusEntry>& corpus, Check& c5, Check& c6, Check& c8, Check& c9) {
  Rational lowest(2);
  std::size_t compared = 0;
  for (const auto& e : corpus) {
    const Instance& metric = e.closure.instance();
    const BcrSolution& sol = e.gen.solution;
    const Rational before = cost(sol, metric);
    auto safe = [&](const BcrSolution& s, const Rational& bound, const std::string& step) {
      c9.expect(verify_primal(s, metric).feasible(), tag(e.seed) + step + " infeasible");
      c9.expect(oracle::primal_feasible(s, metric), tag(e.seed) + step + " fails enumeration");
      c9.expect(cost(s, metric) <= bound, tag(e.seed) + step + " raised the cost");
      c9.expect(is_half_integral(s), tag(e.seed) + step + " lost half-integrality");
    };
    BcrSolution rerouted = reroute_steiner_roots(sol, metric);
    safe(rerouted, before, "reroute");
    BcrSolution split = split_off(rerouted, metric);
    safe(split, cost(rerouted, metric), "split_off");
    safe(fully_reduce(sol, metric), before, "fully_reduce");

    auto [structured, report] = well_structure(sol, metric);
    c9.expect(structured == split, tag(e.seed) + "well_structure differs from reroute + split_off");
    c9.expect(z_on_terminals(structured, metric), tag(e.seed) + "z on a Steiner root");
    c9.expect(!find_splitoff(structured, metric).has_value(), tag(e.seed) + "a split-off remains");

    BcrSolution reduced = fully_reduce(structured, metric);
    safe(reduced, cost(structured, metric), "fully_reduce after structuring");

    DensityResult dense = densest_subgraph(reduced, metric);
    lowest = std::min(lowest, dense.density);
    c5.expect(dense.density >= Rational(9, 16), tag(e.seed) + "density " + format_fraction(dense.density));

    ProjectionMultigraph pm = projection_multigraph(reduced, metric.num_vertices());
    Vertex bad = 0;
    c6.expect(structure_holds(pm, metric.num_vertices(), bad),
              tag(e.seed) + "vertex " + metric.label(bad) + " breaks the degree structure");
    c6.expect(!find_structure_violation(pm).has_value(), tag(e.seed) + "library reports a structure violation");

    for (const BcrSolution* s : {&sol, static_cast<const BcrSolution*>(&reduced)}) {
      DensityResult fast = densest_subgraph(*s, metric);
      try {
        DensityResult slow = densest_subgraph_bruteforce(*s, metric, 14);
        c8.expect(slow.density == fast.density, tag(e.seed) + "densest " + format_fraction(fast.density) +
                                                    " but exhaustive " + format_fraction(slow.density));
        ++compared;
      } catch (const TooLarge&) {
      }
    }
  }
  std::cout << "    lowest reduced density " << format_fraction(lowest) << ", " << compared
            << " densest-subgraph comparisons\n";
}

void flow_equivalence(Check& c8) {
  std::mt19937_64 rng(8);
  std::size_t networks = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 10);
    FlowNetwork net = oracle::random_network(rng, n);
    const int s[] = {0};
    const int t[] = {static_cast<int>(n) - 1};
    Rational fast = max_flow(net, s, t).value;
    Rational slow = oracle::enumerated_min_cut(net, s, t);
    c8.expect(fast == slow, "network " + std::to_string(trial) + ": flow " + format_fraction(fast) + ", cut " +
                                format_fraction(slow));
    ++networks;
  }
  c8.expect(networks >= 100, "too few networks");
  std::cout << "    " << networks << " random networks\n";
}

void criterion_7(Check& c) {
  auto corpus = fixture::single_component(50);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Instance& inst = corpus[i].instance;
    DemandGraph dg = demand_graph(inst);
    auto terms = dg.components[dg.nontrivial_components().front()];
    TreeBcrSolution t = to_tree_bcr(corpus[i].solution, inst);
    std::string name = "instance " + std::to_string(i) + ": ";
    c.expect(verify_tree_bcr(t, terms, inst).feasible(), name + "tree solution infeasible");
    c.expect(oracle::tree_feasible(t.x, t.root, terms, inst), name + "tree solution fails enumeration");
    c.expect(cost(t, inst) == cost(corpus[i].solution, inst), name + "cost changed");
  }

  auto small = fixture::single_component(10, 3);
  std::size_t equal = 0;
  for (std::size_t i = 0; i < small.size(); ++i) {
    const Instance& inst = small[i].instance;
    Instance other = fixture::other_representation(inst);
    std::string name = "LP instance " + std::to_string(i) + ": ";
    c.expect(inst.num_vertices() <= 8, name + "too many vertices");
    c.expect(same_representation(inst, other) && fixture::pair_set(inst) != fixture::pair_set(other),
             name + "representations not distinct");
    auto terms = terminals(inst);
    ForestLpResult a = solve_forest_bcr(inst);
    ForestLpResult b = solve_forest_bcr(other);
    TreeLpResult t = solve_tree_bcr(inst, terms, terms.front());
    bool ok = a.status == LpStatus::Optimal && b.status == LpStatus::Optimal && t.status == LpStatus::Optimal &&
              a.value == b.value && a.value == t.value;
    c.expect(ok, name + "forest " + format_fraction(a.value) + " / " + format_fraction(b.value) + ", tree " +
                     format_fraction(t.value));
    equal += ok;
  }
  std::cout << "    " << corpus.size() << " transforms, " << equal << " LP equalities\n";
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const Check& c, double seconds, double budget) {
    bool pass = c.failures == 0 && seconds < budget;
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " (" << seconds << " s)";
    if (seconds >= budget) std::cout << " over the " << budget << " s budget";
    if (c.failures) std::cout << ", " << c.failures << " failures" << c.notes.str();
    std::cout << std::endl;
    failed += !pass;
  };
  Check c[10];
  // Runs f and returns its wall time; an escaping exception fails criterion id.
  auto guarded = [&](int id, const std::function<void()>& f) {
    auto start = std::chrono::steady_clock::now();
    try {
      f();
    } catch (const std::exception& ex) {
      c[id].expect(false, std::string("error: ") + ex.what());
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  double t1 = guarded(1, [&] { criterion_1(c[1]); });
  report(1, c[1], t1, 60);
  double t2 = guarded(2, [&] { criterion_2(c[2]); });
  report(2, c[2], t2, 300);

  std::vector<CorpusEntry> corpus;
  double t_round = guarded(3, [&] {
    corpus = build_corpus();
    corpus_rounding(corpus, c[3], c[4]);
  });
  double t_struct = guarded(5, [&] { corpus_structure(corpus, c[5], c[6], c[8], c[9]); });
  double t_flow = guarded(8, [&] { flow_equivalence(c[8]); });
  report(3, c[3], t_round, 600);
  report(4, c[4], t_round, 600);
  report(5, c[5], t_struct, 600);
  report(6, c[6], t_struct, 600);
  double t7 = guarded(7, [&] { criterion_7(c[7]); });
  report(7, c[7], t7, 600);
  report(8, c[8], t_struct + t_flow, 600);
  report(9, c[9], t_struct, 600);
  return failed == 0 ? 0 : 1;
}
