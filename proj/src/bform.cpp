#include "voa/bform.hpp"

#include "voa/conformal.hpp"

namespace voa {

Rational pair_form(const ModeEngine& eng, const GradedVector& v, const GradedVector& w, int n) {
  if (!v.is_homogeneous(n) || !w.is_homogeneous(n))
    throw InhomogeneousInput("pair_form needs homogeneous degree-" + std::to_string(n) +
                             " arguments");
  GradedVector p = eng.mode(v, 2 * n - 1, w);
  Rational c = p.coeff(BasisState::vacuum());
  return n % 2 == 0 ? c : -c;
}

QMat gram(const ModeEngine& eng, int n) {
  const Algebra& alg = eng.algebra();
  const auto& basis = alg.basis(n);
  int d = static_cast<int>(basis.size());
  QMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g.at(i, j) =
          pair_form(eng, GradedVector::term(basis[i], 1), GradedVector::term(basis[j], 1), n);
  return g;
}

const QMat& PairingTable::gram(int n) const {
  auto it = grams_.find(n);
  if (it == grams_.end()) it = grams_.emplace(n, voa::gram(eng_, n)).first;
  return it->second;
}

Rational PairingTable::pair(const GradedVector& v, const GradedVector& w, int n) const {
  if (!v.is_homogeneous(n) || !w.is_homogeneous(n))
    throw InhomogeneousInput("pair needs homogeneous degree-" + std::to_string(n) + " arguments");
  const Algebra& alg = eng_.algebra();
  std::vector<Rational> x = alg.coords(v, n);
  std::vector<Rational> y = gram(n).apply(alg.coords(w, n));
  Rational out(0);
  for (size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0 && sgn(y[i]) != 0) out += x[i] * y[i];
  return out;
}

PositivityReport is_positive_definite(const ModeEngine& eng, int up_to) {
  const Algebra& alg = eng.algebra();
  PositivityReport rep;
  rep.checked_up_to = up_to;
  for (int n = 0; n <= up_to; ++n) {
    LdlReport ldl = ldl_positivity(gram(eng, n));
    if (!ldl.positive_definite) {
      rep.positive_definite = false;
      rep.failing_degree = n;
      rep.witness = alg.from_coords(n, *ldl.witness);
      rep.witness_value = ldl.pivots.back();
      return rep;
    }
  }
  rep.positive_definite = true;
  return rep;
}

std::vector<GradedVector> quasi_primary_basis(const ModeEngine& eng, int n) {
  const Algebra& alg = eng.algebra();
  std::vector<GradedVector> out;
  int dim_below = n == 0 ? 0 : alg.dim(n - 1);
  if (n == 0) {
    out.push_back(alg.vacuum());
  } else {
    GradedVector omega = alg.omega();
    QMat l1(dim_below, alg.dim(n));
    for (int j = 0; j < alg.dim(n); ++j) {
      GradedVector img = eng.mode(omega, 2, GradedVector::term(alg.basis(n)[j], 1));
      std::vector<Rational> x = alg.coords(img, n - 1);
      for (int r = 0; r < dim_below; ++r) l1.at(r, j) = x[r];
    }
    for (const auto& x : nullspace(l1)) out.push_back(alg.from_coords(n, x));
  }
  if (static_cast<int>(out.size()) + dim_below != alg.dim(n))
    throw AssertionFailed("V_n != Q_n + T V_{n-1} at degree " + std::to_string(n));
  return out;
}

PosLReport verify_pos_l(const ModeEngine& eng, int up_to, int trials, std::uint64_t seed) {
  const Algebra& alg = eng.algebra();
  PairingTable table(eng);
  PosLReport rep;
  std::mt19937_64 rng(seed);
  auto check = [&](const GradedVector& v, int n) {
    Rational q = table.quad(v, n);
    rep.vectors_checked++;
    if (sgn(q) <= 0) {
      rep.ok = false;
      rep.counterexample = v;
      rep.detail = "B(v,v) = " + rat_str(q) + " at degree " + std::to_string(n);
      throw CounterexampleFound(rep.detail);
    }
  };
  for (int n = 0; n <= up_to; ++n) {
    for (const BasisState& s : alg.basis(n)) check(GradedVector::term(s, 1), n);
    for (int t = 0; t < trials; ++t) check(random_homogeneous(alg, n, rng), n);
  }
  // Exact recursion step behind the positivity induction:
  // (|0>, Tb(2n-1)Tb)(-1)^n = (2n-1)(2n-2)(|0>, b(2n-3)b)(-1)^{n-1}.
  const BasisState vac = BasisState::vacuum();
  auto identity_check = [&](const GradedVector& b, int n) {
    GradedVector tb = eng.translate(b);
    Rational lhs = eng.mode(tb, 2 * n - 1, tb).coeff(vac);
    Rational rhs = Rational((2 * n - 1) * (2 * n - 2)) * eng.mode(b, 2 * n - 3, b).coeff(vac);
    rep.identities_checked++;
    if (!(lhs == -rhs)) {
      rep.ok = false;
      rep.detail = "translation recursion failed at degree " + std::to_string(n);
      throw CounterexampleFound(rep.detail);
    }
  };
  for (int n = 2; n <= up_to; ++n) {
    for (const BasisState& s : alg.basis(n - 1)) identity_check(GradedVector::term(s, 1), n);
    for (int t = 0; t < trials; ++t) identity_check(random_homogeneous(alg, n - 1, rng), n);
  }
  return rep;
}

HighDegreeReport no_high_conformal(const ModeEngine& eng, int up_to, int trials, int candidates,
                                   int family_samples, std::uint64_t seed) {
  const Algebra& alg = eng.algebra();
  PairingTable table(eng);
  HighDegreeReport rep;
  std::mt19937_64 rng(seed);
  auto positive = [&](const GradedVector& v, int n) {
    Rational q = table.quad(v, n);
    if (sgn(q) == 0) {
      rep.ok = false;
      rep.detail = "nonzero v of degree " + std::to_string(n) + " with v(2n-1)v = 0";
      throw CounterexampleFound(rep.detail);
    }
  };
  for (int n = 3; n <= up_to; ++n) {
    for (const BasisState& s : alg.basis(n)) {
      positive(GradedVector::term(s, 1), n);
      rep.basis_checked++;
    }
    for (int t = 0; t < trials; ++t) {
      positive(random_homogeneous(alg, n, rng), n);
      rep.random_checked++;
    }
  }
  // Random candidates with a nonzero component of degree in [3, up_to]: the
  // top component has B(top, top) != 0, so pr_0 of a(2 top - 1)a is nonzero
  // and the vanishing condition a(n)a = 0, n >= 4, fails at n = 2 top - 1.
  std::uniform_int_distribution<int> topdeg(3, up_to);
  for (int c = 0; c < candidates; ++c) {
    int nt = topdeg(rng);
    GradedVector a = random_homogeneous(alg, nt, rng);
    for (int d = 0; d < nt; ++d) {
      std::uniform_int_distribution<int> coin(0, 1);
      if (coin(rng)) a += random_homogeneous(alg, d, rng);
    }
    GradedVector top = a.project(nt);
    Rational q = table.quad(top, nt);
    if (sgn(q) == 0) {
      rep.ok = false;
      rep.detail = "candidate top component pairs to zero";
      throw CounterexampleFound(rep.detail);
    }
    // q != 0 certifies pr_0(a(2nt-1)a) = top(2nt-1)top != 0.
    rep.candidates_rejected++;
  }
  // The surviving family: (1/2)u(1)u + u + omega + Tb with u, b in J_1.
  std::vector<GradedVector> jb = j1_basis(eng);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  auto random_j1 = [&]() {
    GradedVector u;
    for (const GradedVector& e : jb) {
      GradedVector t = e;
      t *= rat(num(rng), den(rng));
      u += t;
    }
    return u;
  };
  for (int i = 0; i < family_samples; ++i) {
    GradedVector u = random_j1();
    GradedVector b = random_j1();
    GradedVector a = eng.mode(u, 1, u);
    a *= rat(1, 2);
    a += u;
    a += alg.omega();
    a += eng.translate(b);
    OpeVerdict ope = check_ope(eng, a);
    bool ok = ope.all() && check_derivation(eng, a) && eigen_grading(eng, a).ok();
    if (!ok) {
      rep.ok = false;
      rep.detail = "family member failed a conformal condition";
      throw CounterexampleFound(rep.detail);
    }
    rep.family_verified++;
  }
  return rep;
}

}  // namespace voa
