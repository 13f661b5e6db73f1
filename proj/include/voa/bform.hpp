#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voa/linalg.hpp"
#include "voa/modes.hpp"

namespace voa {

// Invariant pairing B(v, w) = (-1)^n * (coefficient of |0> in v(2n-1)w)
// for homogeneous v, w of degree n. Throws InhomogeneousInput otherwise.
Rational pair_form(const ModeEngine& eng, const GradedVector& v, const GradedVector& w, int n);

// Exact Gram matrix of B on basis(n).
QMat gram(const ModeEngine& eng, int n);

// Per-degree Gram cache with a fast quadratic-form path. A unit test pins
// the cached path to the definitional coefficient extraction.
class PairingTable {
 public:
  explicit PairingTable(const ModeEngine& eng) : eng_(eng) {}
  const QMat& gram(int n) const;
  Rational pair(const GradedVector& v, const GradedVector& w, int n) const;
  Rational quad(const GradedVector& v, int n) const { return pair(v, v, n); }

 private:
  const ModeEngine& eng_;
  mutable std::map<int, QMat> grams_;
};

struct PositivityReport {
  bool positive_definite = false;
  int checked_up_to = 0;
  int failing_degree = -1;
  std::optional<GradedVector> witness;  // B(witness, witness) <= 0
  std::optional<Rational> witness_value;
};
// Leading-principal-minor test of every G_n, n <= up_to.
PositivityReport is_positive_definite(const ModeEngine& eng, int up_to);

// Exact kernel of L(1) on V_n; asserts dim Q_n + dim V_{n-1} = dim V_n.
std::vector<GradedVector> quasi_primary_basis(const ModeEngine& eng, int n);

struct PosLReport {
  bool ok = true;
  long vectors_checked = 0;
  long identities_checked = 0;
  std::optional<GradedVector> counterexample;
  std::string detail;
};
// B(v, v) > 0 for all basis vectors and `trials` random nonzero vectors of
// each degree n <= up_to, plus the exact recursion step
// (|0>, Tb(2n-1)Tb)(-1)^n = (2n-1)(2n-2)(|0>, b(2n-3)b)(-1)^{n-1}
// on basis and random b. Preconditions: positive-definite regime.
PosLReport verify_pos_l(const ModeEngine& eng, int up_to, int trials, std::uint64_t seed);

struct HighDegreeReport {
  bool ok = true;
  long basis_checked = 0;
  long random_checked = 0;
  long candidates_rejected = 0;
  long family_verified = 0;
  std::string detail;
};
// Positive-definite regime: certifies v(2n-1)v != 0 for every nonzero v of
// degree n in [3, up_to] (basis exhaustively, plus random trials), rejects
// random candidates carrying a component of degree in [3, up_to] by
// exhibiting the failing OPE index, and verifies that random
// (1/2)u(1)u + u + omega + Tb with u, b in J_1 are conformal.
HighDegreeReport no_high_conformal(const ModeEngine& eng, int up_to, int trials,
                                   int candidates, int family_samples, std::uint64_t seed);

}  // namespace voa
