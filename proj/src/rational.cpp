#include "voa/rational.hpp"

#include <cctype>

namespace voa {

Rational rat_parse(const std::string& text) {
  size_t lo = 0, hi = text.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
  std::string s = text.substr(lo, hi - lo);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rat_str(const Rational& x) {
  return x.get_str();
}

Integer binomial(unsigned long top, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), top, k);
  return r;
}

}  // namespace voa
