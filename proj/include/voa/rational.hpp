#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace voa {

// Exact rational scalar. mpq_class keeps values reduced with positive
// denominator once canonicalized; every constructor below canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rat(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "p/q", with optional sign and surrounding whitespace.
Rational rat_parse(const std::string& text);

// Canonical form: "p" when q == 1, else "p/q".
std::string rat_str(const Rational& x);

// C(top, k) for top >= 0, exact.
Integer binomial(unsigned long top, unsigned long k);

}  // namespace voa
