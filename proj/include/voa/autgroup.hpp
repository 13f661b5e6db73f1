#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voa/conformal.hpp"
#include "voa/endo.hpp"

namespace voa {

// exp(v(1)) as a graded matrix; v must lie in the span of j1_basis().
// Degree-lowering, hence nilpotent on the truncation and summed exactly.
Endo exp_j1(const ModeEngine& eng, const GradedVector& v);

// Lift of an exact-orthogonal r x r matrix O (columns = images of the
// currents: h_j -> sum_i O[i][j] h_i) to the degree-preserving algebra
// automorphism acting multiplicatively on parts. Requires O^T O = 1.
Endo orthogonal_lift(const ModeEngine& eng, const QMat& o);
// orthogonal_lift(-1): the sign automorphism state -> (-1)^{#parts} state.
Endo sign_automorphism(const ModeEngine& eng);

enum class Orientation { raising, lowering };

// The change-of-grading automorphism of the fundamental construction: maps
// each anchor v in V_n to the grading's eigenvector over v, so V_n is
// carried onto V'_n. Preconditions (checked blockwise): raising needs
// V'_n within V_{>= n} with V'_n disjoint from V_{>= n+1}; lowering is the
// mirror image. Its inverse restricts to pr_n on each V'_n.
Endo build_projection_auto(const ModeEngine& eng, const EigenGrading& grading,
                           Orientation orientation);

// psi_a in Aut+ with psi_a(omega) = a, for a in V_{>= 2} with pr_2(a) =
// omega, a(0) = T, a(1)a = 2a and integer-semisimple a(1). Throws
// HypothesisFailed naming the violated condition.
Endo build_psi(const ModeEngine& eng, const GradedVector& a);

struct MembershipReport {
  bool is_aut = false;
  bool is_aut_plus = false;
  bool is_aut_zero = false;
  bool is_aut_minus = false;
  bool fixes_omega = false;
  bool vacuum_fixed = false;
  bool invertible = false;
  bool products_preserved = false;
  int checked_state_degree = 0;  // basis degrees covered by the product scan
  std::string first_failure;
};

struct MembershipOptions {
  // Cap on the degree of basis states fed to the product scan; -1 means
  // everything that closes within the truncation.
  int max_state_degree = -1;
};

// isAut = fixes vacuum + invertible + intertwines the current modes:
// f(h_i(m) w) = f(h_i)(m) f(w) on every basis w and index m that closes.
// Currents and the vacuum generate the Fock space through the iterate
// identity, so current intertwining implies f(u(n)v) = f(u)(n)f(v) for all
// basis pairs within the same closure bounds. The graded memberships are
// read off block support with identity diagonal blocks.
MembershipReport membership(const ModeEngine& eng, const Endo& f,
                            const MembershipOptions& opts = {});

// Brute-force multiplicativity scan over basis pairs and indices, used to
// cross-check the generator-based shortcut on small instances.
bool products_preserved_bruteforce(const ModeEngine& eng, const Endo& f, int max_pair_degree);

// f with f(omega) = a for strong-CFT a: exp_j1(pr_1 a) composed with the
// projection automorphism of the reduced vector. Throws NotStrongCFT when
// check_scft fails and ScftV2Violation if pr_2 of the reduced vector is
// not omega (which would refute the V_2 classification).
Endo conjugate_to_omega(const ModeEngine& eng, const GradedVector& a);

struct Decomposition {
  Endo g;  // Aut- factor
  Endo h;  // Aut0 factor
  Endo k;  // Aut+ factor
};

// Unique f = g h k with g in Aut-, h in Aut0, k in Aut+. Throws
// NotAutomorphism when the membership precondition fails; internal
// assertion failures name the statement they would refute.
Decomposition decompose(const ModeEngine& eng, const Endo& f,
                        const MembershipOptions& opts = {});

struct OrbitWitness {
  int from = 0;  // sample indices
  int to = 0;
  std::string kind;  // "identity", "sign", "permutation", "rotation", "reflection"
  Endo map;
  bool verified = false;
};

struct Orbit {
  Rational central_charge;
  std::vector<int> members;
  std::vector<OrbitWitness> witnesses;
};

struct OrbitReport {
  std::vector<Orbit> orbits;
  // True when every same-charge pair got a verified witness.
  bool complete = true;
};

// Groups V_2 conformal vectors of CFT type by Aut_omega-orbit: exact
// central charge as invariant, explicit orthogonal-lift witnesses (signed
// permutations, 2x2 rational rotations, Householder reflections) between
// members. Each sample must pass check_cft.
OrbitReport classify_v2(const ModeEngine& eng, const std::vector<GradedVector>& samples);

}  // namespace voa
