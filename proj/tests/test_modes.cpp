#include <doctest.h>

#include <random>

#include "voa/modes.hpp"

using namespace voa;

namespace {

// ------------------------------------------------------------------
// Independent oracle for a(n)b, kept free of the engine's iterate
// recursion: expand the normal-ordered product
//   Y(a,z) = :prod_i (1/(m_i-1)!) d^{m_i-1} h_{c_i}(z):
// into current monomials, extract the z^{-n-1} coefficient, and apply
// annihilators before creators. Only the single-current action is shared
// with the engine (it is the defining representation).
// ------------------------------------------------------------------

// coefficient of h(j) z^{-j-m} in (1/(m-1)!) d^{m-1} h(z)
Rational field_coeff(int j, int m) {
  Rational c(1);
  for (int i = 1; i <= m - 1; ++i) c *= Rational(j + i);
  for (int i = 1; i <= m - 1; ++i) c /= Rational(i);
  return c;
}

struct OracleCtx {
  const Rational& level;
  int max_degree;
};

// annihilators (j >= 1) first, then creators (j <= -1); any h(0) kills.
GradedVector apply_monomial(const OracleCtx& ctx, const std::vector<Part>& fields,
                            const std::vector<int>& js, const BasisState& b) {
  Rational coeff(1);
  BasisState state = b;
  for (size_t i = 0; i < js.size(); ++i) {
    if (js[i] == 0) return {};
    if (js[i] > 0) {
      int mult = state.count_part(fields[i].color, js[i]);
      if (mult == 0) return {};
      coeff *= Rational(mult) * Rational(js[i]) * ctx.level;
      state = state.without_part(fields[i].color, js[i]);
    }
  }
  for (size_t i = 0; i < js.size(); ++i) {
    if (js[i] < 0) {
      if (state.degree() - js[i] > ctx.max_degree) return {};  // beyond truncation
      state = state.with_part(fields[i].color, -js[i]);
    }
  }
  return GradedVector::term(state, coeff);
}

void enumerate_tuples(const OracleCtx& ctx, const std::vector<Part>& fields, size_t pos,
                      int remaining, std::vector<int>& js, const BasisState& b, int lo, int hi,
                      GradedVector& acc) {
  if (pos + 1 == fields.size()) {
    js[pos] = remaining;
    if (remaining < lo || remaining > hi) return;
    Rational c(1);
    for (size_t i = 0; i < fields.size(); ++i) {
      Rational fc = field_coeff(js[i], fields[i].mode);
      if (sgn(fc) == 0) return;
      c *= fc;
    }
    GradedVector term = apply_monomial(ctx, fields, js, b);
    term *= c;
    acc += term;
    return;
  }
  for (int j = lo; j <= hi; ++j) {
    js[pos] = j;
    enumerate_tuples(ctx, fields, pos + 1, remaining - j, js, b, lo, hi, acc);
  }
}

GradedVector oracle_mode(const Rational& level, int max_degree, const BasisState& a, int n,
                         const BasisState& b) {
  OracleCtx ctx{level, max_degree};
  if (a.is_vacuum()) return n == -1 ? GradedVector::term(b, 1) : GradedVector();
  const auto& fields = a.parts();
  int weight = a.degree();
  // sum of j_i must equal n + 1 - sum of m_i for the z^{-n-1} coefficient
  int target = n + 1 - weight;
  int k = static_cast<int>(fields.size());
  int hi = b.degree();  // larger annihilators die on b
  int lo = std::min(target - (k - 1) * hi, -(ctx.max_degree + 1));
  std::vector<int> js(fields.size());
  GradedVector acc;
  enumerate_tuples(ctx, fields, 0, target, js, b, lo, hi, acc);
  return acc;
}

// Same iterate identity as the engine but stripping the trailing part, to
// pin the engine's strip-first choice as order-independent.
GradedVector mode_strip_last(const ModeEngine& eng, const BasisState& s, int n,
                             const BasisState& t) {
  int out_deg = s.degree() + t.degree() - n - 1;
  if (out_deg < 0 || out_deg > eng.max_degree()) return {};
  if (s.is_vacuum()) return n == -1 ? GradedVector::term(t, 1) : GradedVector();
  Part tail = s.parts().back();
  int k = tail.mode, color = tail.color;
  BasisState u = s.without_part(color, k);
  GradedVector tv = GradedVector::term(t, 1);
  GradedVector acc;
  int cut = std::max(t.degree(), u.degree() + t.degree() - n);
  Rational coef(1);
  for (int j = 0; j <= cut; ++j) {
    if (j > 0) coef = coef * Rational(k + j - 1) / Rational(j);
    GradedVector term;
    GradedVector inner = mode_strip_last(eng, u, n + j, t);
    if (!inner.is_zero()) term += eng.heis_mode(color, -(k + j), inner);
    GradedVector ht = eng.heis_mode(color, j, tv);
    for (const auto& [ts, tc] : ht.terms()) {
      GradedVector piece = mode_strip_last(eng, u, n - k - j, ts);
      piece *= tc * Rational(k % 2 == 0 ? -1 : 1);
      term += piece;
    }
    term *= coef;
    acc += term;
  }
  return acc;
}

ModeEngine make(int rank, const Rational& level, int n) { return ModeEngine({rank, level, n}); }

BasisState st(std::vector<Part> parts) { return BasisState(std::move(parts)); }

}  // namespace

TEST_CASE("heisenberg commutation basics") {
  ModeEngine eng = make(1, rat(3, 2), 6);
  GradedVector h = eng.algebra().current(1);
  CHECK(eng.heis_mode(1, 1, h) == GradedVector::term(BasisState::vacuum(), rat(3, 2)));
  // h(0) kills everything
  for (int d = 0; d <= 4; ++d)
    for (const BasisState& s : eng.algebra().basis(d))
      CHECK(eng.heis_mode(1, 0, GradedVector::term(s, 1)).is_zero());
  CHECK(eng.heis_mode(1, -2, h) == GradedVector::term(st({{1, 2}, {1, 1}}), 1));
  CHECK_THROWS_AS(eng.heis_mode(1, -7, h), TruncationExceeded);
}

TEST_CASE("vacuum laws") {
  ModeEngine eng = make(2, rat(1), 5);
  GradedVector vac = eng.algebra().vacuum();
  for (int d = 0; d <= 4; ++d)
    for (const BasisState& s : eng.algebra().basis(d)) {
      GradedVector a = GradedVector::term(s, 1);
      CHECK(eng.mode(a, -1, vac) == a);
      CHECK(eng.mode(a, 0, vac).is_zero());
      CHECK(eng.mode(a, 3, vac).is_zero());
      CHECK(eng.mode(vac, -1, a) == a);
      CHECK(eng.mode(vac, 0, a).is_zero());
      CHECK(eng.mode(vac, -3, a).is_zero());
    }
}

TEST_CASE("frozen mode products") {
  for (const Rational& level : {rat(1), rat(-1), rat(2, 3)}) {
    ModeEngine eng = make(1, level, 6);
    GradedVector h = eng.algebra().current(1);
    GradedVector omega = eng.algebra().omega();
    CHECK(eng.mode(h, 1, h) == GradedVector::term(BasisState::vacuum(), level));
    CHECK(eng.mode(omega, 1, h) == h);  // L(0) eigenvalue 1
    // central charge 1: omega(3)omega = (1/2)|0>
    CHECK(eng.mode(omega, 3, omega) == GradedVector::term(BasisState::vacuum(), rat(1, 2)));
    CHECK(eng.mode(omega, 2, omega).is_zero());
    CHECK(eng.mode(omega, 0, h) == eng.translate(h));
  }
}

TEST_CASE("translation operator") {
  ModeEngine eng = make(1, rat(1), 6);
  GradedVector h = eng.algebra().current(1);
  CHECK(eng.translate(eng.algebra().vacuum()).is_zero());
  CHECK(eng.translate(h) == GradedVector::term(st({{1, 2}}), 1));
  CHECK(eng.translate(GradedVector::term(st({{1, 2}}), 1)) ==
        GradedVector::term(st({{1, 3}}), rat(2)));
}

TEST_CASE("translate matches the derivative formula on every state") {
  ModeEngine eng = make(2, rat(-1), 6);
  for (int d = 0; d <= 5; ++d)
    for (const BasisState& s : eng.algebra().basis(d)) {
      // direct formula: T(state) = sum over parts m * (state with m -> m+1)
      GradedVector expect;
      for (size_t i = 0; i < s.parts().size(); ++i) {
        Part p = s.parts()[i];
        expect.add_term(s.without_part(p.color, p.mode).with_part(p.color, p.mode + 1),
                        Rational(p.mode));
      }
      CHECK(eng.translate(GradedVector::term(s, 1)) == expect);
    }
}

TEST_CASE("mode products match the normal-ordering oracle") {
  std::mt19937_64 rng(2024);
  for (const Rational& level : {rat(1), rat(-1), rat(1, 2)}) {
    for (int rank = 1; rank <= 2; ++rank) {
      ModeEngine eng = make(rank, level, 9);
      const Algebra& alg = eng.algebra();
      std::uniform_int_distribution<int> deg(0, 4);
      for (int trial = 0; trial < 60; ++trial) {
        int da = deg(rng), db = deg(rng);
        const auto& ba = alg.basis(da);
        const auto& bb = alg.basis(db);
        std::uniform_int_distribution<size_t> pa(0, ba.size() - 1), pb(0, bb.size() - 1);
        BasisState a = ba[pa(rng)], b = bb[pb(rng)];
        for (int n = -3; n <= 4; ++n) {
          if (da + db - n - 1 > alg.max_degree()) continue;
          CAPTURE(da);
          CAPTURE(db);
          CAPTURE(n);
          CHECK(eng.mode(GradedVector::term(a, 1), n, GradedVector::term(b, 1)) ==
                oracle_mode(level, alg.max_degree(), a, n, b));
        }
      }
    }
  }
}

TEST_CASE("strip order does not matter") {
  ModeEngine eng = make(2, rat(1), 8);
  const Algebra& alg = eng.algebra();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    int da = deg(rng), db = deg(rng);
    const auto& ba = alg.basis(da);
    const auto& bb = alg.basis(db);
    std::uniform_int_distribution<size_t> pa(0, ba.size() - 1), pb(0, bb.size() - 1);
    BasisState a = ba[pa(rng)], b = bb[pb(rng)];
    for (int n = -2; n <= 3; ++n) {
      if (da + db - n - 1 > alg.max_degree()) continue;
      CHECK(eng.mode(GradedVector::term(a, 1), n, GradedVector::term(b, 1)) ==
            mode_strip_last(eng, a, n, b));
    }
  }
}

TEST_CASE("degree law") {
  // pr_{n+m-k-1}(a(k)b) = pr_n(a)(k) pr_m(b) for a in V_{>= n}, b in V_{>= m}
  ModeEngine eng = make(2, rat(1), 7);
  const Algebra& alg = eng.algebra();
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    GradedVector a = random_homogeneous(alg, 2, rng);
    a += random_homogeneous(alg, 3, rng);
    a += random_homogeneous(alg, 5, rng);
    GradedVector b = random_homogeneous(alg, 1, rng);
    b += random_homogeneous(alg, 4, rng);
    int n = 2, m = 1;
    for (int k = -2; k <= 4; ++k) {
      int out = n + m - k - 1;
      if (out < 0) continue;
      GradedVector lhs = eng.mode(a, k, b).project(out);
      GradedVector rhs = eng.mode(a.project(n), k, b.project(m));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("homogeneous output degrees") {
  ModeEngine eng = make(1, rat(1), 8);
  const Algebra& alg = eng.algebra();
  for (int da = 0; da <= 3; ++da)
    for (const BasisState& a : alg.basis(da))
      for (int db = 0; db <= 3; ++db)
        for (const BasisState& b : alg.basis(db))
          for (int n = -3; n <= 3; ++n) {
            GradedVector out = eng.mode(GradedVector::term(a, 1), n, GradedVector::term(b, 1));
            if (!out.is_zero()) CHECK(out.is_homogeneous(da + db - n - 1));
          }
}

TEST_CASE("skew symmetry on generators and random pairs") {
  ModeEngine eng = make(1, rat(1), 6);
  const Algebra& alg = eng.algebra();
  GradedVector omega = alg.omega();
  GradedVector h = alg.current(1);
  CHECK(eng.check_skew_symmetry(omega, omega));
  CHECK(eng.check_skew_symmetry(h, omega));
  // the identity behind a_1(1)omega = a_1
  CHECK(eng.mode(h, 1, omega) == h);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    GradedVector a = random_homogeneous(alg, 3, rng);
    GradedVector b = random_homogeneous(alg, 4, rng);
    auto rep = eng.check_skew_symmetry(a, b);
    CHECK(rep.ok);
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("borcherds samples") {
  ModeEngine eng = make(1, rat(1), 8);
  const Algebra& alg = eng.algebra();
  BasisState vac = BasisState::vacuum();
  BasisState h = st({{1, 1}});
  auto r = eng.check_borcherds_sample(vac, vac, vac, 0, 0, 0);
  REQUIRE(r);
  CHECK(*r);
  r = eng.check_borcherds_sample(h, h, vac, 0, 1, 0);
  REQUIRE(r);
  CHECK(*r);
  for (int d1 = 0; d1 <= 2; ++d1)
    for (const BasisState& u : alg.basis(d1))
      for (int d2 = 0; d2 <= 2; ++d2)
        for (const BasisState& v : alg.basis(d2))
          for (int p = -2; p <= 2; ++p)
            for (int q = -2; q <= 2; ++q)
              for (int s = -2; s <= 2; ++s) {
                auto res = eng.check_borcherds_sample(u, v, h, p, q, s);
                if (res) CHECK(*res);
              }
}

TEST_CASE("exp of a degree-lowering mode") {
  ModeEngine eng = make(1, rat(2), 6);
  const Algebra& alg = eng.algebra();
  GradedVector th = alg.current(1);
  th *= rat(5, 7);
  GradedVector image = eng.exp_v1_apply(th, alg.omega());
  GradedVector expect = alg.omega();
  expect += th;
  GradedVector c = alg.vacuum();
  c *= rat(25, 49);  // t^2 kappa / 2 with t = 5/7, kappa = 2
  expect += c;
  CHECK(image == expect);
}

TEST_CASE("axiom scan smoke run") {
  AxiomScanParams params;
  params.state_degree = 3;
  params.pair_degree = 2;
  params.triple_degree = 1;
  params.index_min = -2;
  params.index_max = 2;
  params.random_pairs = 5;
  params.random_triples = 10;
  for (int rank = 1; rank <= 2; ++rank) {
    AxiomReport rep = verify_axioms({rank, rat(1), 4}, params);
    CHECK(rep.ok);
    CHECK(rep.failures.empty());
    CHECK(rep.vacuum_checked > 0);
    CHECK(rep.borcherds_checked > 0);
  }
}

TEST_CASE("truncation contracts") {
  ModeEngine eng = make(1, rat(1), 4);
  GradedVector deep = GradedVector::term(st({{1, 4}}), 1);
  CHECK_THROWS_AS(eng.translate(deep), TruncationExceeded);
  CHECK_THROWS_AS(eng.mode(deep, -2, deep), TruncationExceeded);
  auto [trunc, dropped] = eng.mode_truncated(deep, -2, deep);
  CHECK(dropped);
  CHECK(trunc.is_zero());
}
