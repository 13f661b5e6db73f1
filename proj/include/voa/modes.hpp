#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "voa/fock.hpp"

namespace voa {

// The vertex-operator engine for one algebra instance.
//
// Conventions: [h_i(m), h_j(n)] = kappa * m * delta_ij * delta_{m+n,0},
// h_i(m)|0> = 0 for m >= 0, h_i(-m) appends a part. A general mode product
// a(n)b is computed by stripping the first part h_i(-k) off a = h_i(-k)u
// and expanding the iterate identity
//
//   (h_i(-k)u)(n) = sum_{j>=0} C(k+j-1, j) *
//       [ h_i(-k-j) u(n+j)  -  (-1)^k u(n-k-j) h_i(j) ],
//
// whose two branches vanish identically once n+j >= deg u + deg b and
// j > deg b respectively (the cut is asserted, not assumed). Intermediates
// never exceed max(input degree, output degree), so any product whose
// homogeneous outputs land in [0, maxDegree] is computed exactly.
class ModeEngine {
 public:
  explicit ModeEngine(AlgebraConfig cfg);

  const Algebra& algebra() const { return alg_; }
  int max_degree() const { return alg_.max_degree(); }
  const Rational& level() const { return alg_.level(); }

  // Action of the current mode h_color(m). Throws TruncationExceeded when a
  // creation would pass maxDegree.
  GradedVector heis_mode(int color, int m, const GradedVector& v) const;

  // a(n)b. Throws TruncationExceeded when some homogeneous output degree
  // would exceed maxDegree.
  GradedVector mode(const GradedVector& a, int n, const GradedVector& b) const;

  // Like mode(), but drops out-of-range homogeneous outputs instead of
  // throwing; second element reports whether anything was dropped.
  std::pair<GradedVector, bool> mode_truncated(const GradedVector& a, int n,
                                               const GradedVector& b) const;

  // T a = a(-2)|0>; raises degree by exactly one.
  GradedVector translate(const GradedVector& a) const;
  GradedVector translate_power(const GradedVector& a, int k) const;

  // exp(v(1)) a for v of degree 1 (v(1) lowers degree, so the sum is finite).
  GradedVector exp_v1_apply(const GradedVector& v, const GradedVector& a) const;

  struct SkewReport {
    bool ok = true;
    int checked = 0;  // indices n compared exactly
    int skipped = 0;  // indices whose outputs exceed maxDegree
    operator bool() const { return ok; }
  };
  // a(n)b = sum_k (-1)^{n+k+1} T^k (b(n+k)a) / k! for all n that close.
  SkewReport check_skew_symmetry(const GradedVector& a, const GradedVector& b) const;

  // One Borcherds identity instance for basis states u, v, w and integers
  // (p, q, s); nullopt when some intermediate falls outside the truncation.
  std::optional<bool> check_borcherds_sample(const BasisState& u, const BasisState& v,
                                             const BasisState& w, int p, int q, int s) const;

 private:
  GradedVector mode_state(const BasisState& s, int n, const BasisState& t) const;

  Algebra alg_;
  mutable std::map<std::tuple<BasisState, int, BasisState>, GradedVector> memo_;
};

// Axiom scan bounds. Degrees refer to the states sampled; the scan builds
// its own engine, deep enough that no sample is skipped for truncation.
struct AxiomScanParams {
  int state_degree = 6;     // vacuum/translation scans run over all states <= this
  int pair_degree = 3;      // exhaustive skew-symmetry pairs up to this degree each
  int triple_degree = 2;    // exhaustive Borcherds triples up to this degree each
  int index_min = -4;
  int index_max = 4;
  int random_pairs = 40;    // extra skew pairs of degree <= state_degree
  int random_triples = 150; // extra Borcherds triples of degree <= state_degree
  std::uint64_t seed = 20240901;
};

struct AxiomReport {
  bool ok = true;
  long vacuum_checked = 0;
  long translation_checked = 0;
  long skew_checked = 0;
  long borcherds_checked = 0;
  std::vector<std::string> failures;
};

// Vacuum axioms, (Ta)(n) = -n a(n-1), skew-symmetry and Borcherds samples
// for the configured rank and level.
AxiomReport verify_axioms(const AlgebraConfig& cfg, const AxiomScanParams& params);

}  // namespace voa
