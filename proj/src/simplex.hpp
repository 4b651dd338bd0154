#pragma once

// Dense exact dual simplex used by the cutting-plane solver. Internal.

#include <cstddef>
#include <utility>
#include <vector>

#include "bcr/rational.hpp"

namespace bcr::detail {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Minimizes c.v subject to the stored rows and v >= 0. Every row is kept as
// v_basic + sum_j T_j v_j = rhs. Reduced costs must stay nonnegative, so the
// caller starts from a dual feasible basis; cut rows only ever add dual
// feasible structure.
class DualSimplex {
 public:
  explicit DualSimplex(std::vector<Rational> costs);

  std::size_t columns() const { return costs_.size(); }
  std::size_t rows() const { return rows_.size(); }
  std::size_t pivots() const { return pivots_; }

  // Equation a.v = rhs with `basic` as its basic column. The basic column
  // must have coefficient 1 and zero cost, and must not appear in any row
  // added earlier.
  void add_basic_row(const SparseRow& a, const Rational& rhs, std::size_t basic);

  // a.v >= b, through a fresh slack column s = a.v - b.
  void add_cut(const SparseRow& a, const Rational& b);

  // Returns false if the current rows are infeasible.
  bool optimize();

  std::vector<Rational> values() const;
  Rational objective() const;

 private:
  struct Row {
    std::vector<Rational> coef;
    Rational rhs;
    std::size_t basic = 0;
  };

  void pivot(std::size_t r, std::size_t col);

  std::vector<Rational> costs_;
  std::vector<Rational> reduced_;
  std::vector<Row> rows_;
  std::vector<char> is_basic_;
  std::size_t pivots_ = 0;
};

}  // namespace bcr::detail
