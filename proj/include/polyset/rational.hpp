#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyset {

/// Exact arbitrary-precision rational. GMP keeps values canonical
/// (positive denominator, reduced); all arithmetic and comparison is exact.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RowVec = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line(line), column(column) {}
  int line;
  int column;
};

/// Parses a rational literal: optional sign, then an integer, a fraction
/// "p/q", or a decimal "d.ddd" taken exactly ("2.23" -> 223/100).
Rational parse_rational(std::string_view text);

/// Exact form "p/q", or just "p" for integers.
std::string to_string(const Rational& r);

/// Display-only decimal rendering with `digits` places after the point,
/// rounded half away from zero.
std::string to_decimal_string(const Rational& r, int digits = 4);

std::string to_string(const Vec& v);

inline Vec make_vec(std::initializer_list<Rational> entries) {
  Vec v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v;
}

inline Mat make_mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()),
        rows.size() ? static_cast<Eigen::Index>(rows.begin()->size()) : 0);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

}  // namespace polyset
