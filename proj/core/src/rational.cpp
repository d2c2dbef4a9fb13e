#include "fm/rational.hpp"

#include <cctype>
#include <string>

#include "fm/error.hpp"

namespace fm {

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  auto bad = [&]() { return DomainError("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  std::size_t fraction_digits = 0;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  mpz_class num(digits, 10);
  mpz_class den = 1;
  for (std::size_t i = 0; i < fraction_digits; ++i) den *= 10;
  Rational q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

}  // namespace fm
