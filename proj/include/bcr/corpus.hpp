#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcr/generators.hpp"
#include "bcr/rounding.hpp"

namespace bcr {

// Random half-integral instance used by the corpus: density 3/10 and
// 2 + seed % 3 pairs.
Generated corpus_instance(std::uint64_t seed, int n);

struct CorpusRecord {
  std::uint64_t seed = 0;
  int n = 0;
  Rational lp_cost;
  Rational rounded_cost;
  Rational ratio;
  // Smallest densest-subgraph density seen: every rounding level and the
  // well-structured, fully reduced input.
  Rational min_density;
  Rational reduced_density;
  bool oracle_compared = false;  // brute-force density ran (support <= 14)
  RoundingTrace trace;
  // One line per failed property; empty when the seed passes.
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

// Rounds the instance and checks the rounding ratio, the per-level spanning
// tree bound and cost split, the recursion depth, the density floor and
// degree structure of the reduced solution, density against brute force, and
// that every structuring step keeps the solution feasible, half-integral and
// no more expensive.
CorpusRecord run_corpus_case(std::uint64_t seed, int n);

std::string corpus_csv_header();
std::string corpus_csv_row(const CorpusRecord& record);

}  // namespace bcr
