#include "polyset/rational.hpp"

#include <cctype>
#include <sstream>

namespace polyset {

Rational parse_rational(std::string_view text) {
  size_t i = 0;
  auto fail = [&](const std::string& msg) -> Rational {
    throw ParseError(msg + " in rational literal '" + std::string(text) + "'",
                     0, static_cast<int>(i) + 1);
  };
  if (text.empty()) return fail("empty string");

  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = (text[i] == '-');
    ++i;
  }
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
    return fail("expected digit");

  Integer int_part = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    int_part = int_part * 10 + (text[i] - '0');
    ++i;
  }

  Rational value;
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      return fail("expected denominator");
    Integer den = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      den = den * 10 + (text[i] - '0');
      ++i;
    }
    if (den == 0) return fail("zero denominator");
    value = Rational(int_part, den);
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    Integer frac = 0;
    Integer scale = 1;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      return fail("expected fractional digits");
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      frac = frac * 10 + (text[i] - '0');
      scale *= 10;
      ++i;
    }
    value = Rational(int_part) + Rational(frac, scale);
  } else {
    value = Rational(int_part);
  }
  if (i != text.size()) return fail("trailing characters");
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  Integer scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  Integer num = numerator(r) * scale;
  Integer den = denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;
  // round half away from zero
  Integer scaled = (2 * num + den) / (2 * den);
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::ostringstream os;
  if (negative && (whole != 0 || frac != 0)) os << '-';
  os << whole;
  if (digits > 0) {
    std::string f = frac.str();
    os << '.' << std::string(digits - f.size(), '0') << f;
  }
  return os.str();
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << to_string(v(i));
  }
  os << ')';
  return os.str();
}

}  // namespace polyset
