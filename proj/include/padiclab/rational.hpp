#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace padiclab {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline std::int64_t ceil_of(const Rational& r) { return -floor_of(-r); }

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// "3", "-1/2" -- reduced form.
std::string to_string(const Rational& r);

/// Accepts "a", "a/b" with optional sign; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace padiclab
