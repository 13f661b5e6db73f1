#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voa/endo.hpp"
#include "voa/modes.hpp"

namespace voa {

// Verdicts for the OPE conditions a(1)a = 2a, a(3)a in K|0>, and
// a(n)a = 0 for n = 2 and n >= 4. central_charge = 2 * coeff of |0> in
// a(3)a, present exactly when the second condition holds.
struct OpeVerdict {
  bool eq1 = false;
  bool eq2 = false;
  bool eq3 = false;
  std::optional<Rational> central_charge;
  bool all() const { return eq1 && eq2 && eq3; }
};
OpeVerdict check_ope(const ModeEngine& eng, const GradedVector& a);

// a(0)v = Tv on every basis vector whose outputs close in the truncation.
bool check_derivation(const ModeEngine& eng, const GradedVector& a);

enum class EigenStatus { ok, not_semisimple, non_integer_eigenvalue };

// Exact eigen-decomposition of a(1) on the truncation. Three shapes are
// handled: degree-preserving (per-degree blocks, minimal polynomial must be
// squarefree with integer roots), L(0) + strictly raising (triangular solve
// upward from each anchor, the Theorem-mor situation), and L(0) + strictly
// lowering (mirrored solve). Anything else falls back to the truncated
// full-matrix decomposition with a reduced trust degree.
struct EigenGrading {
  EigenStatus status = EigenStatus::ok;
  std::string detail;                              // failure diagnostics
  std::vector<int> eigenvalues;                    // sorted, distinct
  std::map<int, std::vector<GradedVector>> eigenbasis;  // n -> basis of V_n^a
  Endo change_of_basis;  // canonical basis state -> its eigenvector
  int trust_degree = 0;

  bool ok() const { return status == EigenStatus::ok; }
  int dim(int n) const;
};
EigenGrading eigen_grading(const ModeEngine& eng, const GradedVector& a);

// CFT conditions on a grading: eigenvalues >= 0; finite dimensions
// (automatic on the truncation, reported); V_0^a one-dimensional and
// spanned by the vacuum.
struct CftVerdict {
  bool eq6 = false;
  bool eq7 = false;
  bool eq8 = false;
  bool all() const { return eq6 && eq7 && eq8; }
};
CftVerdict check_cft(const ModeEngine& eng, const GradedVector& a, const EigenGrading& g);

// Strong CFT: a(2) w = 0 for every w in the computed basis of V_1^a.
bool check_scft(const ModeEngine& eng, const GradedVector& a, const EigenGrading& g);

// Aggregated report for one candidate vector.
struct ConformalReport {
  bool ope_ok[3] = {false, false, false};
  bool derivation_ok = false;
  std::optional<EigenGrading> grading;
  bool cft_ok[3] = {false, false, false};
  bool scft_ok = false;
  std::optional<Rational> central_charge;
  int trust_degree = 0;

  bool conformal() const;
  bool cft() const;
};
ConformalReport conformal_report(const ModeEngine& eng, const GradedVector& a);

// Largest degree through which checks on `a` close without truncation:
// min(N, N - (max_degree(a) - 2)).
int trust_degree_for(const ModeEngine& eng, const GradedVector& a);

// Basis of J_1(V) = { v in V_1 : v(0) = 0 }, by exact kernel solve of the
// stacked matrices of v(0) over all basis states.
std::vector<GradedVector> j1_basis(const ModeEngine& eng);
bool in_j1_span(const ModeEngine& eng, const GradedVector& v);

// Lie bracket [u, v] = u(0)v on V_1, and the center of (V_1, [,]).
GradedVector lie_v1(const ModeEngine& eng, const GradedVector& u, const GradedVector& v);
std::vector<GradedVector> v1_center(const ModeEngine& eng);

// (u, a') with u = pr_1(a) in J_1 and a' = exp(-u(1)) a in V_{>= 2}.
// Throws NotConformal if a fails the OPE/derivation preconditions and
// AssertionFailed if a' escapes V_{>= 2} (would refute the pr_1 reduction).
std::pair<GradedVector, GradedVector> pr1_reduce(const ModeEngine& eng, const GradedVector& a);

// Unique x with Tx = v when v lies in Im T (T is injective on V_{>= 1});
// nullopt otherwise. Requires v in V_{>= 1}.
std::optional<GradedVector> preimage_under_T(const ModeEngine& eng, const GradedVector& v);

}  // namespace voa
