#include "bcr/rational.hpp"

#include <cctype>

#include "bcr/errors.hpp"

namespace bcr {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  bool ok = is_integer_literal(num) &&
            (slash == std::string_view::npos || (is_integer_literal(den) && den.front() != '-' && den.front() != '+'));
  if (!ok) throw ParseError("malformed rational '" + std::string(text) + "'");

  std::string num_str(num);
  if (num_str.front() == '+') num_str.erase(0, 1);
  mpz_class n(num_str, 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) d = mpz_class(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_fraction(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_half_integral(const Rational& value) {
  return value.get_den() == 1 || value.get_den() == 2;
}

}  // namespace bcr
