#pragma once

#include <compare>
#include <map>
#include <random>
#include <vector>

#include "voa/errors.hpp"
#include "voa/rational.hpp"

namespace voa {

// One creation label h_color(-mode), color in [1..rank], mode >= 1.
struct Part {
  int color = 1;
  int mode = 1;

  friend bool operator==(const Part&, const Part&) = default;
};

// Canonical part order: color ascending, then mode descending, so that a
// sorted part list reads h1(-3)h1(-1)h2(-2)... left to right.
inline bool part_less(const Part& a, const Part& b) {
  if (a.color != b.color) return a.color < b.color;
  return a.mode > b.mode;
}

// A colored partition: multiset of creation labels applied to the vacuum.
// Always stored in canonical part order. The empty list is the vacuum.
class BasisState {
 public:
  BasisState() = default;
  explicit BasisState(std::vector<Part> parts);

  static BasisState vacuum() { return BasisState{}; }

  const std::vector<Part>& parts() const { return parts_; }
  bool is_vacuum() const { return parts_.empty(); }
  int degree() const;

  // New state with one extra part (re-canonicalized).
  BasisState with_part(int color, int mode) const;
  // New state with one copy of (color, mode) removed; requires presence.
  BasisState without_part(int color, int mode) const;
  int count_part(int color, int mode) const;

  bool operator==(const BasisState&) const = default;
  // Total order compatible with the enumeration order: lexicographic on the
  // canonical part lists, parts compared by part_less.
  bool operator<(const BasisState& other) const;

 private:
  std::vector<Part> parts_;
};

// Finite exact-rational linear combination of basis states. Zero
// coefficients are never stored, so operator== is exact equality.
class GradedVector {
 public:
  GradedVector() = default;

  static GradedVector term(const BasisState& s, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  const std::map<BasisState, Rational>& terms() const { return terms_; }

  // Coefficient of s (zero if absent).
  Rational coeff(const BasisState& s) const;
  // Adds c * s in place.
  void add_term(const BasisState& s, const Rational& c);

  // Largest/smallest degree carrying a nonzero term; -1 for the zero vector.
  int max_degree() const;
  int min_degree() const;
  // Sorted list of degrees with a nonzero component.
  std::vector<int> degrees() const;
  bool is_homogeneous(int n) const;

  GradedVector project(int n) const;

  GradedVector& operator+=(const GradedVector& other);
  GradedVector& operator-=(const GradedVector& other);
  GradedVector& operator*=(const Rational& c);

  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(const Rational& c, GradedVector v) { return v *= c; }
  GradedVector operator-() const;

  bool operator==(const GradedVector&) const = default;

 private:
  std::map<BasisState, Rational> terms_;
};

// The degree-n homogeneous component pr_n(v).
inline GradedVector project(const GradedVector& v, int n) { return v.project(n); }

// Heisenberg algebra instance: rank, level kappa, truncation degree N.
struct AlgebraConfig {
  int rank = 1;
  Rational level = 1;
  int max_degree = 6;

  // rank >= 1, level != 0, max_degree >= 4.
  void validate() const;
};

// Basis bookkeeping for one algebra instance: per-degree colored-partition
// bases in canonical order, with index lookup and coordinate maps.
class Algebra {
 public:
  explicit Algebra(AlgebraConfig cfg);

  const AlgebraConfig& config() const { return cfg_; }
  int rank() const { return cfg_.rank; }
  const Rational& level() const { return cfg_.level; }
  int max_degree() const { return cfg_.max_degree; }

  // All colored partitions of n, canonical order. 0 <= n <= max_degree.
  const std::vector<BasisState>& basis(int n) const;
  int dim(int n) const;
  // dim V_0 + ... + dim V_n.
  int dim_upto(int n) const;
  // Position of s within basis(s.degree()).
  int index_of(const BasisState& s) const;

  GradedVector vacuum() const;
  // h_color(-1)|0>.
  GradedVector current(int color) const;
  // omega = (1/2 kappa) sum_i h_i(-1)^2 |0>.
  GradedVector omega() const;

  // Coordinates of pr_n(v) in basis(n) order.
  std::vector<Rational> coords(const GradedVector& v, int n) const;
  GradedVector from_coords(int n, const std::vector<Rational>& x) const;

 private:
  AlgebraConfig cfg_;
  // Built per degree on first use. Like the mode memo, this cache behaves
  // as a write-once map: racing builders would write identical content.
  mutable std::vector<std::vector<BasisState>> basis_;
  mutable std::vector<std::map<BasisState, int>> index_;
  mutable std::vector<bool> built_;
};

// Homogeneous vector of the given degree with coefficients drawn uniformly
// from {-9..9}/{1..9}; re-drawn until nonzero (degree 0 included).
GradedVector random_homogeneous(const Algebra& alg, int degree, std::mt19937_64& rng);

}  // namespace voa
