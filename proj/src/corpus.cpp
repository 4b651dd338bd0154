#include "bcr/corpus.hpp"

#include "bcr/density.hpp"
#include "bcr/errors.hpp"
#include "bcr/forest.hpp"
#include "bcr/structuring.hpp"

namespace bcr {

namespace {

// Feasible, half-integral, and no more expensive than `before`.
void check_step(const char* name, const BcrSolution& after, const Rational& before, const Instance& inst,
                std::vector<std::string>& failures) {
  Verdict v = verify_primal(after, inst);
  if (!v.feasible()) failures.push_back(std::string(name) + " broke feasibility: " + v.describe(inst));
  if (!is_half_integral(after)) failures.push_back(std::string(name) + " broke half-integrality");
  Rational c = cost(after, inst);
  if (c > before) {
    failures.push_back(std::string(name) + " raised cost " + format_fraction(before) + " -> " + format_fraction(c));
  }
}

void check_structuring(const BcrSolution& sol, const MetricClosure& closure, CorpusRecord& rec) {
  const Instance& metric = closure.instance();
  const Rational base = cost(sol, metric);
  BcrSolution rerouted = reroute_steiner_roots(sol, metric);
  check_step("reroute", rerouted, base, metric, rec.failures);
  BcrSolution split = split_off(rerouted, metric);
  check_step("split_off", split, cost(rerouted, metric), metric, rec.failures);

  auto [structured, report] = well_structure(sol, metric);
  if (!(structured == split)) rec.failures.push_back("well_structure differs from reroute + split_off");
  if (!z_on_terminals(structured, metric)) rec.failures.push_back("well_structure left z on a Steiner root");
  if (auto s = find_splitoff(structured, metric)) {
    rec.failures.push_back("well_structure left a split at " + metric.label(s->v) + " for root " +
                           metric.label(s->root));
  }

  BcrSolution reduced = fully_reduce(structured, metric);
  check_step("fully_reduce", reduced, cost(structured, metric), metric, rec.failures);

  DensityResult dense = densest_subgraph(reduced, metric);
  rec.reduced_density = dense.density;
  if (dense.density < Rational(9, 16)) {
    rec.failures.push_back("reduced density " + format_fraction(dense.density) + " below 9/16");
  }
  ProjectionMultigraph pm = projection_multigraph(reduced, metric.num_vertices());
  if (auto bad = find_structure_violation(pm)) {
    rec.failures.push_back("degree structure fails at " + metric.label(*bad));
  }

  for (const BcrSolution* s : {&sol, static_cast<const BcrSolution*>(&reduced)}) {
    try {
      DensityResult brute = densest_subgraph_bruteforce(*s, metric, 14);
      DensityResult fast = densest_subgraph(*s, metric);
      rec.oracle_compared = true;
      if (brute.density != fast.density) {
        rec.failures.push_back("densest subgraph " + format_fraction(fast.density) + " but brute force " +
                               format_fraction(brute.density));
      }
    } catch (const TooLarge&) {
    }
  }
}

}  // namespace

Generated corpus_instance(std::uint64_t seed, int n) {
  return gen_random_halfintegral(seed, n, Rational(3, 10), 2 + static_cast<int>(seed % 3));
}

CorpusRecord run_corpus_case(std::uint64_t seed, int n) {
  CorpusRecord rec;
  rec.seed = seed;
  rec.n = n;
  Generated g = corpus_instance(seed, n);
  const Instance& inst = g.instance;
  rec.lp_cost = cost(g.solution, inst);

  Verdict input = verify_primal(g.solution, inst);
  if (!input.feasible()) rec.failures.push_back("generated solution infeasible: " + input.describe(inst));
  if (!is_half_integral(g.solution)) rec.failures.push_back("generated solution not half-integral");

  try {
    RatioReport report = check_ratio(g.solution, inst);
    rec.rounded_cost = report.rounded_cost;
    rec.ratio = report.ratio;
    rec.trace = report.result.trace;
  } catch (const RatioExceeded& e) {
    rec.failures.push_back(e.what());
    rec.trace = e.trace();
    rec.rounded_cost = rec.trace.total_cost;
    rec.ratio = sgn(rec.lp_cost) == 0 ? Rational(0) : Rational(rec.rounded_cost / rec.lp_cost);
  }
  ForestVerdict fv = check_forest(rec.trace.forest, inst);
  if (!fv.feasible) rec.failures.push_back("rounded forest infeasible: " + fv.describe(inst));

  bool first = true;
  for (std::size_t i = 0; i < rec.trace.levels.size(); ++i) {
    const RoundingLevel& level = rec.trace.levels[i];
    if (first || level.density < rec.min_density) rec.min_density = level.density;
    first = false;
    if (level.mst_cost * level.density > level.inside_cost) {
      rec.failures.push_back("level " + std::to_string(i) + ": spanning tree cost " + format_fraction(level.mst_cost) +
                             " exceeds " + format_fraction(level.inside_cost) + " / " + format_fraction(level.density));
    }
    if (level.contracted_cost + level.inside_cost > level.structured_cost) {
      rec.failures.push_back("level " + std::to_string(i) + ": contracted plus inside cost exceeds structured cost");
    }
  }
  if (rec.trace.levels.size() + 1 > inst.num_vertices()) {
    rec.failures.push_back("recursion depth " + std::to_string(rec.trace.levels.size()) + " exceeds |V| - 1");
  }

  if (!inst.pairs().empty() && sgn(rec.lp_cost) > 0) {
    check_structuring(g.solution, metric_closure(inst), rec);
    if (first || rec.reduced_density < rec.min_density) rec.min_density = rec.reduced_density;
  }
  return rec;
}

std::string corpus_csv_header() { return "seed,lp_cost,rounded_cost,ratio,min_density"; }

std::string corpus_csv_row(const CorpusRecord& r) {
  return std::to_string(r.seed) + "," + format_fraction(r.lp_cost) + "," + format_fraction(r.rounded_cost) + "," +
         format_fraction(r.ratio) + "," + format_fraction(r.min_density);
}

}  // namespace bcr
