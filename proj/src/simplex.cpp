#include "simplex.hpp"

#include <stdexcept>

namespace bcr::detail {

DualSimplex::DualSimplex(std::vector<Rational> costs)
    : costs_(std::move(costs)), reduced_(costs_), is_basic_(costs_.size(), 0) {
  for (const auto& c : costs_) {
    if (sgn(c) < 0) throw std::invalid_argument("dual simplex needs nonnegative costs");
  }
}

void DualSimplex::add_basic_row(const SparseRow& a, const Rational& rhs, std::size_t basic) {
  Row row;
  row.coef.assign(columns(), Rational(0));
  for (const auto& [j, v] : a) row.coef.at(j) += v;
  if (row.coef.at(basic) != 1 || sgn(costs_[basic]) != 0 || is_basic_[basic]) {
    throw std::invalid_argument("bad basic column for new row");
  }
  row.rhs = rhs;
  row.basic = basic;
  for (const auto& other : rows_) {
    if (sgn(other.coef[basic]) != 0) throw std::invalid_argument("basic column already in use");
    Rational f = row.coef[other.basic];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < row.coef.size(); ++j) {
      if (sgn(other.coef[j]) != 0) row.coef[j] -= f * other.coef[j];
    }
    row.rhs -= f * other.rhs;
  }
  is_basic_[basic] = 1;
  rows_.push_back(std::move(row));
}

void DualSimplex::add_cut(const SparseRow& a, const Rational& b) {
  const std::size_t slack = columns();
  costs_.emplace_back(0);
  reduced_.emplace_back(0);
  is_basic_.push_back(1);
  for (auto& row : rows_) row.coef.emplace_back(0);

  Row row;
  row.coef.assign(slack + 1, Rational(0));
  for (const auto& [j, v] : a) row.coef.at(j) -= v;
  row.coef[slack] = 1;
  row.rhs = -b;
  row.basic = slack;
  for (const auto& other : rows_) {
    Rational f = row.coef[other.basic];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < row.coef.size(); ++j) {
      if (sgn(other.coef[j]) != 0) row.coef[j] -= f * other.coef[j];
    }
    row.rhs -= f * other.rhs;
  }
  rows_.push_back(std::move(row));
}

void DualSimplex::pivot(std::size_t r, std::size_t col) {
  Row& prow = rows_[r];
  const Rational inv = 1 / prow.coef[col];
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < prow.coef.size(); ++j) {
    if (sgn(prow.coef[j]) != 0) {
      prow.coef[j] *= inv;
      nz.push_back(j);
    }
  }
  prow.rhs *= inv;

  auto eliminate = [&](std::vector<Rational>& coef, Rational* rhs) {
    const Rational f = coef[col];
    if (sgn(f) == 0) return;
    for (std::size_t j : nz) coef[j] -= f * prow.coef[j];
    if (rhs) *rhs -= f * prow.rhs;
  };
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i != r) eliminate(rows_[i].coef, &rows_[i].rhs);
  }
  eliminate(reduced_, nullptr);

  is_basic_[prow.basic] = 0;
  is_basic_[col] = 1;
  prow.basic = col;
  ++pivots_;
}

bool DualSimplex::optimize() {
  for (;;) {
    std::size_t leave = rows_.size();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (sgn(rows_[i].rhs) < 0 && (leave == rows_.size() || rows_[i].basic < rows_[leave].basic)) leave = i;
    }
    if (leave == rows_.size()) return true;

    const auto& coef = rows_[leave].coef;
    std::size_t enter = coef.size();
    Rational best;
    for (std::size_t j = 0; j < coef.size(); ++j) {
      if (sgn(coef[j]) >= 0) continue;
      Rational ratio = reduced_[j] / -coef[j];
      if (enter == coef.size() || ratio < best) {
        enter = j;
        best = std::move(ratio);
      }
    }
    if (enter == coef.size()) return false;
    pivot(leave, enter);
  }
}

std::vector<Rational> DualSimplex::values() const {
  std::vector<Rational> v(columns(), Rational(0));
  for (const auto& row : rows_) v[row.basic] = row.rhs;
  return v;
}

Rational DualSimplex::objective() const {
  Rational total(0);
  for (const auto& row : rows_) total += costs_[row.basic] * row.rhs;
  return total;
}

}  // namespace bcr::detail
