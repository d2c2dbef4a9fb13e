#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fm {

using Rational = mpq_class;

inline double value_of(const mpq_class& q) { return q.get_d(); }

// "num/den" in lowest terms; integers print without a denominator.
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "3", "-7/4" or a finite decimal such as "0.09".
Rational parse_rational(std::string_view text);

}  // namespace fm
