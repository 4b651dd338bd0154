// bcr: command-line front end for generating, verifying, rounding and solving
// Steiner Forest LP instances.
//
// Exit codes: 0 success, 1 infeasible / violated / failed, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bcr/corpus.hpp"
#include "bcr/density.hpp"
#include "bcr/errors.hpp"
#include "bcr/forest.hpp"
#include "bcr/generators.hpp"
#include "bcr/lp_solver.hpp"
#include "bcr/rounding.hpp"
#include "bcr/steiner_transform.hpp"

namespace {

using namespace bcr;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

Instance load_instance(const std::string& path) {
  auto in = open_in(path);
  return parse_instance(in);
}

BcrSolution load_solution(const std::string& path, const Instance& inst) {
  auto in = open_in(path);
  return parse_solution(in, inst);
}

int report(const Verdict& v, const Instance& inst, const Rational& value) {
  if (!v.feasible()) {
    std::cout << "infeasible: " << v.describe(inst) << '\n';
    return 1;
  }
  std::cout << "feasible\nvalue " << format_fraction(value) << '\n';
  return 0;
}

// Writes PREFIX.inst, and PREFIX.sol / PREFIX.dual when given.
void emit(const std::string& prefix, const Instance& inst, const BcrSolution* sol, const DualCertificate* dual) {
  write_file(prefix + ".inst", instance_to_string(inst));
  std::cout << "wrote " << prefix << ".inst\n";
  if (sol) {
    write_file(prefix + ".sol", solution_to_string(*sol, inst));
    std::cout << "wrote " << prefix << ".sol\n";
  }
  if (dual) {
    write_file(prefix + ".dual", dual_to_string(*dual, inst));
    std::cout << "wrote " << prefix << ".dual\n";
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      auto s = std::stoull(text);
      return {s, s};
    }
    auto a = std::stoull(text.substr(0, dots));
    auto b = std::stoull(text.substr(dots + 2));
    if (a > b) throw UsageError("empty seed range '" + text + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("bad seed range '" + text + "', expected A..B");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bidirected cut relaxation tools for Steiner Forest"};
  app.require_subcommand(1);
  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances, solutions and certificates");
  gen->require_subcommand(1);
  std::string out_prefix;
  bool with_lp = false, with_dual = false;

  int q = 1;
  auto* gen_lb = gen->add_subcommand("lower-bound", "Integrality gap family");
  gen_lb->add_option("--q", q, "Family parameter")->required()->check(CLI::PositiveNumber);
  gen_lb->add_flag("--with-lp", with_lp, "Also write the LP solution of cost 2q");
  gen_lb->add_option("--out", out_prefix, "Output prefix")->required();
  gen_lb->callback([&] {
    action = [&] {
      Generated g = gen_lower_bound(q);
      emit(out_prefix, g.instance, with_lp ? &g.solution : nullptr, nullptr);
      return 0;
    };
  });

  std::string rep;
  auto* gen_gad = gen->add_subcommand("gadget", "Two representations of one demand partition");
  gen_gad->add_option("--rep", rep, "Representation")->required()->check(CLI::IsMember({"p1", "p2"}));
  gen_gad->add_flag("--with-lp", with_lp, "Also write the optimal primal solution");
  gen_gad->add_flag("--with-dual", with_dual, "Also write the matching dual certificate");
  gen_gad->add_option("--out", out_prefix, "Output prefix")->required();
  gen_gad->callback([&] {
    action = [&] {
      GeneratedWithDual g = gen_gadget(rep == "p1" ? GadgetRep::P1 : GadgetRep::P2);
      emit(out_prefix, g.instance, with_lp ? &g.solution : nullptr, with_dual ? &g.dual : nullptr);
      return 0;
    };
  });

  auto* gen_fig = gen->add_subcommand("figure1", "Small half-integral example");
  gen_fig->add_option("--out", out_prefix, "Output prefix")->required();
  gen_fig->callback([&] {
    action = [&] {
      Generated g = gen_figure1();
      emit(out_prefix, g.instance, &g.solution, nullptr);
      return 0;
    };
  });

  std::uint64_t seed = 0;
  int n = 8, pair_count = 2;
  std::string density_text = "3/10";
  auto* gen_rand = gen->add_subcommand("random", "Seeded random half-integral instance");
  gen_rand->add_option("--seed", seed, "Seed")->required();
  gen_rand->add_option("--n", n, "Vertex count (at least 4)")->required();
  gen_rand->add_option("--pairs", pair_count, "Number of terminal pairs")->required();
  gen_rand->add_option("--density", density_text, "Extra edge probability as p/q")->capture_default_str();
  gen_rand->add_option("--out", out_prefix, "Output prefix")->required();
  gen_rand->callback([&] {
    action = [&] {
      Generated g = gen_random_halfintegral(seed, n, parse_rational(density_text), pair_count);
      emit(out_prefix, g.instance, &g.solution, nullptr);
      return 0;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Check a solution or certificate");
  verify->require_subcommand(1);
  std::string instance_path, solution_path, certificate_path;

  auto* ver_primal = verify->add_subcommand("primal", "Forest LP feasibility (exact separation)");
  ver_primal->add_option("--instance", instance_path)->required();
  ver_primal->add_option("--solution", solution_path)->required();
  ver_primal->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      BcrSolution sol = load_solution(solution_path, inst);
      return report(verify_primal(sol, inst), inst, cost(sol, inst));
    };
  });

  auto* ver_dual = verify->add_subcommand("dual", "Dual certificate feasibility");
  ver_dual->add_option("--instance", instance_path)->required();
  ver_dual->add_option("--certificate", certificate_path)->required();
  ver_dual->add_option("--solution", solution_path, "Ignored; accepted for symmetry");
  ver_dual->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      auto in = open_in(certificate_path);
      DualCertificate cert = parse_dual(in, inst);
      Verdict v = verify_dual(cert, inst);
      return report(v, inst, v.value);
    };
  });

  auto* ver_tree = verify->add_subcommand("tree", "Tree LP feasibility over the instance terminals");
  ver_tree->add_option("--instance", instance_path)->required();
  ver_tree->add_option("--solution", solution_path)->required();
  ver_tree->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      auto in = open_in(solution_path);
      TreeBcrSolution sol = parse_tree_solution(in, inst);
      auto terms = terminals(inst);
      return report(verify_tree_bcr(sol, terms, inst), inst, cost(sol, inst));
    };
  });

  auto* ver_forest = verify->add_subcommand("forest", "Integral forest feasibility");
  ver_forest->add_option("--instance", instance_path)->required();
  ver_forest->add_option("--solution", solution_path, "Forest file")->required();
  ver_forest->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      auto in = open_in(solution_path);
      EdgeSet forest = parse_forest(in, inst);
      ForestVerdict v = check_forest(forest, inst);
      if (!v.feasible) {
        std::cout << "infeasible: " << v.describe(inst) << '\n';
        return 1;
      }
      std::cout << "feasible\nvalue " << format_fraction(forest_cost(forest, inst)) << '\n';
      return 0;
    };
  });

  // round
  bool trace = false;
  std::string out_path;
  auto* round = app.add_subcommand("round", "Round a half-integral solution to a forest");
  round->add_option("--instance", instance_path)->required();
  round->add_option("--solution", solution_path)->required();
  round->add_flag("--trace", trace, "Print every recursion level");
  round->add_option("--out", out_path, "Write the forest to this file");
  round->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      BcrSolution sol = load_solution(solution_path, inst);
      RoundingResult r = round_solution(sol, inst);
      if (trace) std::cout << format_trace(r.trace);
      std::cout << forest_to_string(r.forest, inst);
      std::cout << "cost " << format_fraction(r.trace.total_cost) << '\n';
      if (!out_path.empty()) write_file(out_path, forest_to_string(r.forest, inst));
      return 0;
    };
  });

  // density
  bool brute = false;
  auto* dens = app.add_subcommand("density", "Densest subgraph of the solution support");
  dens->add_option("--instance", instance_path)->required();
  dens->add_option("--solution", solution_path)->required();
  dens->add_flag("--brute-force", brute, "Enumerate subsets instead of using minimum cuts");
  dens->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      BcrSolution sol = load_solution(solution_path, inst);
      DensityResult d = brute ? densest_subgraph_bruteforce(sol, inst) : densest_subgraph(sol, inst);
      std::cout << "W";
      for (Vertex v : d.set) std::cout << ' ' << inst.label(v);
      std::cout << "\ndensity " << format_fraction(d.density) << '\n';
      return 0;
    };
  });

  // transform
  auto* transform = app.add_subcommand("transform", "Convert between relaxations");
  transform->require_subcommand(1);
  std::string root_label;
  auto* steiner = transform->add_subcommand("steiner", "Forest solution to tree solution of equal cost");
  steiner->add_option("--instance", instance_path)->required();
  steiner->add_option("--solution", solution_path)->required();
  steiner->add_option("--root", root_label, "Tree root (default: smallest terminal label)");
  steiner->add_option("--out", out_path, "Write the tree solution to this file");
  steiner->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      BcrSolution sol = load_solution(solution_path, inst);
      std::optional<Vertex> root;
      if (!root_label.empty()) root = inst.vertex(root_label);
      TreeBcrSolution tree = to_tree_bcr(sol, inst, root);
      std::cout << "root " << inst.label(tree.root) << '\n';
      std::cout << "value " << format_fraction(cost(tree, inst)) << '\n';
      if (!out_path.empty()) write_file(out_path, tree_solution_to_string(tree, inst));
      return 0;
    };
  });

  // lp
  auto* lp = app.add_subcommand("lp", "Exact LP optimization");
  lp->require_subcommand(1);
  std::string relaxation = "forest";
  std::size_t cap = kDefaultRoundCap;
  auto* solve = lp->add_subcommand("solve", "Cutting-plane solve");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--relaxation", relaxation)->check(CLI::IsMember({"forest", "tree"}))->capture_default_str();
  solve->add_option("--cap", cap, "Separation round cap")->capture_default_str();
  solve->add_option("--root", root_label, "Tree root (default: smallest terminal label)");
  solve->add_option("--out", out_path, "Write the solution to this file");
  solve->callback([&] {
    action = [&] {
      Instance inst = load_instance(instance_path);
      LpStatus status;
      if (relaxation == "forest") {
        ForestLpResult r = solve_forest_bcr(inst, cap);
        status = r.status;
        std::cout << "value " << format_fraction(r.value) << '\n';
        if (!out_path.empty()) write_file(out_path, solution_to_string(r.solution, inst));
      } else {
        auto terms = terminals(inst);
        if (terms.empty()) throw UsageError("instance has no terminals");
        Vertex root = root_label.empty() ? terms.front() : inst.vertex(root_label);
        if (root_label.empty()) {
          for (Vertex t : terms) {
            if (inst.label(t) < inst.label(root)) root = t;
          }
        }
        TreeLpResult r = solve_tree_bcr(inst, terms, root, cap);
        status = r.status;
        std::cout << "value " << format_fraction(r.value) << '\n';
        if (!out_path.empty()) write_file(out_path, tree_solution_to_string(r.solution, inst));
      }
      std::cout << "status " << (status == LpStatus::Optimal ? "optimal" : "iteration-cap") << '\n';
      return status == LpStatus::Optimal ? 0 : 1;
    };
  });

  // corpus
  std::string seeds_text, report_path;
  std::optional<int> corpus_n;
  auto* corpus = app.add_subcommand("corpus", "Property suite over seeded random instances");
  corpus->add_option("--seeds", seeds_text, "Seed range A..B")->required();
  corpus->add_option("--n", corpus_n, "Vertex count (default: 6 + seed % 7)");
  corpus->add_option("--report", report_path, "CSV report path")->required();
  corpus->callback([&] {
    action = [&] {
      auto [first, last] = parse_seed_range(seeds_text);
      std::ostringstream csv;
      csv << corpus_csv_header() << '\n';
      std::size_t failed = 0, total = 0;
      for (std::uint64_t s = first;; ++s) {
        CorpusRecord rec = run_corpus_case(s, corpus_n.value_or(6 + static_cast<int>(s % 7)));
        csv << corpus_csv_row(rec) << '\n';
        ++total;
        if (!rec.passed()) {
          ++failed;
          for (const auto& f : rec.failures) std::cout << "seed " << s << ": " << f << '\n';
        }
        if (s == last) break;
      }
      write_file(report_path, csv.str());
      std::cout << "seeds " << total << " passed " << total - failed << " failed " << failed << '\n';
      return failed == 0 ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
