#pragma once

#include <optional>
#include <vector>

#include "voa/rational.hpp"

namespace voa {

// Dense exact-rational matrix, row-major.
class QMat {
 public:
  QMat() = default;
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rational(0)) {}

  static QMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const QMat&) const = default;

  QMat transpose() const;
  friend QMat operator*(const QMat& a, const QMat& b);
  friend QMat operator+(QMat a, const QMat& b);
  friend QMat operator-(QMat a, const QMat& b);
  QMat& operator*=(const Rational& c);
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(QMat& m);

int rank(QMat m);

// Basis of { x : A x = 0 }.
std::vector<std::vector<Rational>> nullspace(const QMat& a);

// One solution of A x = b, if any.
std::optional<std::vector<Rational>> solve(const QMat& a, const std::vector<Rational>& b);

std::optional<QMat> inverse(const QMat& a);

// LDL^T pass over a symmetric matrix, stopping at the first pivot <= 0.
// Pivot i equals minor_i / minor_{i-1} (leading principal minors), so
// all-pivots-positive is the exact minor test for positive definiteness.
// On failure, `witness` solves L^T y = e_k on the leading block, giving
// y^T G y = pivot_k <= 0.
struct LdlReport {
  bool positive_definite = false;
  std::vector<Rational> pivots;          // up to and including the failing one
  std::vector<Rational> leading_minors;  // running products of pivots
  std::optional<std::vector<Rational>> witness;
};
LdlReport ldl_positivity(const QMat& g);

// Polynomials over Q, coeffs[i] is the x^i coefficient; no trailing zeros.
using QPoly = std::vector<Rational>;

int poly_deg(const QPoly& p);  // -1 for the zero polynomial
QPoly poly_normalize(QPoly p);
QPoly poly_mul(const QPoly& a, const QPoly& b);
// (quotient, remainder) with deg(rem) < deg(b).
std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b);
QPoly poly_derivative(const QPoly& p);
// Monic gcd.
QPoly poly_gcd(QPoly a, QPoly b);
QPoly poly_monic(QPoly p);
Rational poly_eval(const QPoly& p, const Rational& x);

// Minimal polynomial (monic) of a square matrix, by Krylov iteration over
// the standard basis seeds with lcm accumulation.
QPoly minimal_polynomial(const QMat& a);

// All roots of a squarefree polynomial, when every root is a rational
// integer; nullopt as soon as a non-integer (or non-real) root is certain.
// Uses Sturm-sequence isolation, so the answer is exact and complete.
std::optional<std::vector<Integer>> integer_roots_of_squarefree(QPoly p);

}  // namespace voa
