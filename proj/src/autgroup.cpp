#include "voa/autgroup.hpp"

#include <algorithm>

namespace voa {

namespace {

bool diagonal_blocks_identity(const Endo& f, const Algebra& alg) {
  for (int n = 0; n <= alg.max_degree(); ++n) {
    if (alg.dim(n) == 0) continue;
    const QMat* d = f.block(n, n);
    if (!d || !(*d == QMat::identity(alg.dim(n)))) return false;
  }
  return true;
}

}  // namespace

Endo exp_j1(const ModeEngine& eng, const GradedVector& v) {
  const Algebra& alg = eng.algebra();
  if (!v.is_zero() && !v.is_homogeneous(1)) throw NotInJ1("exp_j1 argument must lie in V_1");
  if (!in_j1_span(eng, v)) throw NotInJ1("exp_j1 argument is outside J_1");
  Endo f;
  f.set_trust_degree(alg.max_degree());
  for (int n = 0; n <= alg.max_degree(); ++n) {
    const auto& basis = alg.basis(n);
    std::map<int, QMat> cols;
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
      GradedVector w = eng.exp_v1_apply(v, GradedVector::term(basis[j], 1));
      for (int m : w.degrees()) {
        auto it = cols.find(m);
        if (it == cols.end()) it = cols.emplace(m, QMat(alg.dim(m), alg.dim(n))).first;
        std::vector<Rational> x = alg.coords(w, m);
        for (int r = 0; r < alg.dim(m); ++r) it->second.at(r, j) = x[r];
      }
    }
    for (auto& [m, blk] : cols) f.set_block(n, m, std::move(blk));
  }
  auto [lo, hi] = f.shift_profile();
  if (hi > 0 || !diagonal_blocks_identity(f, alg))
    throw AssertionFailed("exp of a J_1 mode failed to be unipotent degree-lowering");
  return f;
}

Endo orthogonal_lift(const ModeEngine& eng, const QMat& o) {
  const Algebra& alg = eng.algebra();
  int r = alg.rank();
  if (o.rows() != r || o.cols() != r) throw ConfigError("orthogonal_lift: matrix has wrong shape");
  if (!(o.transpose() * o == QMat::identity(r)))
    throw ConfigError("orthogonal_lift: matrix is not orthogonal");
  Endo f;
  f.set_trust_degree(alg.max_degree());
  for (int n = 0; n <= alg.max_degree(); ++n) {
    const auto& basis = alg.basis(n);
    QMat blk(alg.dim(n), alg.dim(n));
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
      GradedVector w = alg.vacuum();
      for (const Part& p : basis[j].parts()) {
        GradedVector next;
        for (int i = 1; i <= r; ++i) {
          const Rational& c = o.at(i - 1, p.color - 1);
          if (sgn(c) == 0) continue;
          GradedVector created = eng.heis_mode(i, -p.mode, w);
          created *= c;
          next += created;
        }
        w = next;
      }
      std::vector<Rational> x = alg.coords(w, n);
      for (int rr = 0; rr < alg.dim(n); ++rr) blk.at(rr, j) = x[rr];
    }
    f.set_block(n, n, std::move(blk));
  }
  return f;
}

Endo sign_automorphism(const ModeEngine& eng) {
  QMat neg = QMat::identity(eng.algebra().rank());
  neg *= Rational(-1);
  return orthogonal_lift(eng, neg);
}

Endo build_projection_auto(const ModeEngine& eng, const EigenGrading& grading,
                           Orientation orientation) {
  const Algebra& alg = eng.algebra();
  if (!grading.ok()) throw GradingIncompatible("grading decomposition did not succeed");
  bool raising = orientation == Orientation::raising;
  int top = alg.max_degree();

  Endo f;
  f.set_trust_degree(std::min(grading.trust_degree, alg.max_degree()));
  for (int n = 0; n <= top; ++n) {
    int dn = alg.dim(n);
    auto it = grading.eigenbasis.find(n);
    int have = it == grading.eigenbasis.end() ? 0 : static_cast<int>(it->second.size());
    if (have != dn)
      throw GradingIncompatible("eigenvalue " + std::to_string(n) + " carries " +
                                std::to_string(have) + " vectors, expected " + std::to_string(dn));
    if (dn == 0) continue;
    const auto& w = it->second;
    // Support condition: raising needs V'_n inside V_{>= n}, lowering the
    // mirror; and pr_n restricted to V'_n must be injective.
    QMat proj(dn, dn);
    for (int j = 0; j < dn; ++j) {
      int lo = w[j].min_degree(), hi = w[j].max_degree();
      if (raising ? lo < n : hi > n)
        throw GradingIncompatible("grading vector for eigenvalue " + std::to_string(n) +
                                  " has support on the wrong side of degree " + std::to_string(n));
      std::vector<Rational> x = alg.coords(w[j], n);
      for (int r = 0; r < dn; ++r) proj.at(r, j) = x[r];
    }
    auto proj_inv = inverse(proj);
    if (!proj_inv)
      throw GradingIncompatible("V'_" + std::to_string(n) + " meets V_{" +
                                (raising ? ">=" : "<=") + std::to_string(n + (raising ? 1 : -1)) +
                                "}: projection to degree " + std::to_string(n) + " is singular");
    // Columns: combinations of grading vectors whose degree-n projection is
    // the canonical basis, i.e. f|V_n = W_n * proj^{-1}.
    std::map<int, QMat> cols;
    for (int j = 0; j < dn; ++j) {
      GradedVector col;
      for (int i = 0; i < dn; ++i) {
        const Rational& c = proj_inv->at(i, j);
        if (sgn(c) == 0) continue;
        GradedVector t = w[i];
        t *= c;
        col += t;
      }
      for (int m : col.degrees()) {
        auto cit = cols.find(m);
        if (cit == cols.end()) cit = cols.emplace(m, QMat(alg.dim(m), dn)).first;
        std::vector<Rational> x = alg.coords(col, m);
        for (int r = 0; r < alg.dim(m); ++r) cit->second.at(r, j) = x[r];
      }
    }
    for (auto& [m, blk] : cols) f.set_block(n, m, std::move(blk));
  }
  if (!diagonal_blocks_identity(f, alg))
    throw AssertionFailed("projection automorphism lost its identity diagonal");
  return f;
}

Endo build_psi(const ModeEngine& eng, const GradedVector& a) {
  const Algebra& alg = eng.algebra();
  GradedVector omega = alg.omega();
  if (!a.project(0).is_zero() || !a.project(1).is_zero())
    throw HypothesisFailed("build_psi: a is not in V_{>= 2}");
  if (!(a.project(2) == omega)) throw HypothesisFailed("build_psi: pr_2(a) != omega");
  if (!check_derivation(eng, a)) throw HypothesisFailed("build_psi: a(0) != T");
  {
    GradedVector two_a = a;
    two_a *= 2;
    if (!(eng.mode(a, 1, a) == two_a)) throw HypothesisFailed("build_psi: a(1)a != 2a");
  }
  EigenGrading g = eigen_grading(eng, a);
  if (!g.ok())
    throw HypothesisFailed("build_psi: a(1) is not integer-semisimple (" + g.detail + ")");
  Endo psi = build_projection_auto(eng, g, Orientation::raising);
  if (!(psi.apply(omega, alg) == a))
    throw AssertionFailed("psi(omega) != a although a is an eigenvector over omega");
  if (a == omega && !(psi == Endo::identity(alg)))
    throw AssertionFailed("psi_omega is not the identity");
  // Uniqueness is effective once the inverse is again of Aut+ shape and
  // carries a back to omega: any second raising map over a would differ by
  // a raising map fixing omega, which the grading disjointness rules out.
  auto psi_inv = psi.inverted(alg);
  if (!psi_inv) throw AssertionFailed("psi_a is singular");
  auto [ilo, ihi] = psi_inv->shift_profile();
  if (ilo < 0 || !(psi_inv->apply(a, alg) == omega))
    throw AssertionFailed("psi_a^{-1} is not a raising map carrying a to omega");
  return psi;
}

MembershipReport membership(const ModeEngine& eng, const Endo& f, const MembershipOptions& opts) {
  const Algebra& alg = eng.algebra();
  int top = alg.max_degree();
  MembershipReport rep;
  GradedVector vac = alg.vacuum();
  GradedVector omega = alg.omega();
  rep.vacuum_fixed = f.apply(vac, alg) == vac;
  rep.fixes_omega = f.apply(omega, alg) == omega;
  rep.invertible = f.inverted(alg).has_value();

  auto [lo, hi] = f.shift_profile();
  bool diag_id = diagonal_blocks_identity(f, alg);
  rep.is_aut_zero = lo == 0 && hi == 0;
  rep.is_aut_plus = lo >= 0 && diag_id;
  rep.is_aut_minus = hi <= 0 && diag_id;

  int shift = std::max(0, hi);
  int wmax = top - shift;
  if (opts.max_state_degree >= 0) wmax = std::min(wmax, opts.max_state_degree);
  rep.checked_state_degree = wmax;

  // Current intertwining f(h_i(m) w) = f(h_i)(m) f(w). The currents and
  // the vacuum generate every basis state through the iterate identity, so
  // this is equivalent to preservation of all products within the same
  // closure bounds.
  bool ok = rep.vacuum_fixed;
  if (!rep.vacuum_fixed) rep.first_failure = "f(|0>) != |0>";
  for (int i = 1; ok && i <= alg.rank(); ++i) {
    GradedVector fh = f.apply(alg.current(i), alg);
    for (int d = 0; ok && d <= wmax; ++d) {
      for (const BasisState& s : alg.basis(d)) {
        GradedVector w = GradedVector::term(s, 1);
        GradedVector fw = f.apply(w, alg);
        for (int m = d + 2 * shift - top; m <= d + 2 * shift; ++m) {
          GradedVector lhs = f.apply(eng.heis_mode(i, m, w), alg);
          GradedVector rhs = eng.mode(fh, m, fw);
          if (!(lhs == rhs)) {
            ok = false;
            rep.first_failure = "f(h" + std::to_string(i) + "(" + std::to_string(m) +
                                ") w) != f(h)(m) f(w) at a state of degree " + std::to_string(d);
            break;
          }
        }
        if (!ok) break;
      }
    }
  }
  rep.products_preserved = ok;
  rep.is_aut = rep.vacuum_fixed && rep.invertible && ok;
  if (!rep.is_aut && rep.first_failure.empty())
    rep.first_failure = rep.invertible ? "products not preserved" : "not invertible";
  return rep;
}

bool products_preserved_bruteforce(const ModeEngine& eng, const Endo& f, int max_pair_degree) {
  const Algebra& alg = eng.algebra();
  int top = alg.max_degree();
  auto [lo, hi] = f.shift_profile();
  int shift = std::max(0, hi);
  for (int p = 0; p <= max_pair_degree; ++p)
    for (const BasisState& s : alg.basis(p))
      for (int q = 0; q <= max_pair_degree; ++q)
        for (const BasisState& t : alg.basis(q)) {
          GradedVector u = GradedVector::term(s, 1);
          GradedVector v = GradedVector::term(t, 1);
          GradedVector fu = f.apply(u, alg);
          GradedVector fv = f.apply(v, alg);
          for (int n = p + q + 2 * shift - top - 1; n <= p + q - 1 + 2 * shift; ++n) {
            GradedVector lhs = f.apply(eng.mode(u, n, v), alg);
            GradedVector rhs = eng.mode(fu, n, fv);
            if (!(lhs == rhs)) return false;
          }
        }
  return true;
}

Endo conjugate_to_omega(const ModeEngine& eng, const GradedVector& a) {
  const Algebra& alg = eng.algebra();
  ConformalReport rep = conformal_report(eng, a);
  if (!rep.conformal() || !rep.cft() || !rep.scft_ok)
    throw NotStrongCFT("conjugate_to_omega requires a conformal vector of strong CFT type");
  auto [u, reduced] = pr1_reduce(eng, a);
  if (!(reduced.project(2) == alg.omega()))
    throw ScftV2Violation(
        "reduced strong-CFT vector has pr_2 != omega; refutes the V_2 classification");
  Endo psi = build_psi(eng, reduced);
  Endo f = exp_j1(eng, u).compose(psi, alg);
  if (!(f.apply(alg.omega(), alg) == a))
    throw AssertionFailed("conjugation witness does not carry omega to a");
  return f;
}

Decomposition decompose(const ModeEngine& eng, const Endo& f, const MembershipOptions& opts) {
  const Algebra& alg = eng.algebra();
  MembershipReport mem = membership(eng, f, opts);
  if (!mem.is_aut) throw NotAutomorphism("decompose: " + mem.first_failure);

  GradedVector omega = alg.omega();
  GradedVector a = f.apply(omega, alg);
  GradedVector u = a.project(1);
  if (!in_j1_span(eng, u))
    throw AssertionFailed("pr_1(f(omega)) escapes J_1 for an automorphism f");
  Endo g = exp_j1(eng, u);
  GradedVector mu = -u;
  Endo g_inv = exp_j1(eng, mu);
  if (!(g.compose(g_inv, alg) == Endo::identity(alg)))
    throw AssertionFailed("exp(u(1)) exp(-u(1)) != id");

  GradedVector b = eng.exp_v1_apply(mu, a);
  Endo k1 = build_psi(eng, b);
  auto k1_inv = k1.inverted(alg);
  if (!k1_inv) throw AssertionFailed("psi_b is singular");
  Endo h = k1_inv->compose(g_inv, alg).compose(f, alg);
  {
    auto [hl, hh] = h.shift_profile();
    if (hl != 0 || hh != 0)
      throw AssertionFailed("middle factor is not degree-preserving");
    if (!(h.apply(omega, alg) == omega))
      throw AssertionFailed("middle factor moves omega");
  }
  auto h_inv = h.inverted(alg);
  if (!h_inv) throw AssertionFailed("degree-preserving factor is singular");
  Endo k = h_inv->compose(k1, alg).compose(h, alg);
  {
    auto [kl, kh] = k.shift_profile();
    if (kl < 0 || !diagonal_blocks_identity(k, alg))
      throw AssertionFailed("raising factor escapes Aut+");
  }
  if (!(g.compose(h, alg).compose(k, alg) == f))
    throw AssertionFailed("g h k does not reassemble f");
  return {std::move(g), std::move(h), std::move(k)};
}

namespace {

std::optional<QMat> rotation_between(const std::vector<Rational>& x,
                                     const std::vector<Rational>& y) {
  // 2x2 rational rotation with R x = y; exists iff |x| = |y| != 0.
  Rational nx(0), ny(0), dot(0), cross(0);
  for (int i = 0; i < 2; ++i) {
    nx += x[i] * x[i];
    ny += y[i] * y[i];
    dot += x[i] * y[i];
  }
  cross = x[0] * y[1] - x[1] * y[0];
  if (sgn(nx) == 0 || !(nx == ny)) return std::nullopt;
  QMat r(2, 2);
  Rational c = dot / nx, s = cross / nx;
  r.at(0, 0) = c;
  r.at(0, 1) = -s;
  r.at(1, 0) = s;
  r.at(1, 1) = c;
  return r;
}

std::optional<QMat> reflection_between(const std::vector<Rational>& x,
                                       const std::vector<Rational>& y) {
  // Householder reflection through (x - y)^perp maps x to y when |x| = |y|.
  int r = static_cast<int>(x.size());
  std::vector<Rational> u(r);
  Rational uu(0), nx(0), ny(0);
  for (int i = 0; i < r; ++i) {
    u[i] = x[i] - y[i];
    uu += u[i] * u[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  if (!(nx == ny)) return std::nullopt;
  if (sgn(uu) == 0) return QMat::identity(r);
  QMat m = QMat::identity(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m.at(i, j) -= Rational(2) * u[i] * u[j] / uu;
  return m;
}

}  // namespace

OrbitReport classify_v2(const ModeEngine& eng, const std::vector<GradedVector>& samples) {
  const Algebra& alg = eng.algebra();
  GradedVector omega = alg.omega();
  OrbitReport report;
  struct Entry {
    Rational charge;
    std::vector<Rational> h;  // a = omega + Th
  };
  std::vector<Entry> entries;
  for (const GradedVector& a : samples) {
    ConformalReport rep = conformal_report(eng, a);
    if (!rep.cft()) throw NotConformal("classify_v2 sample is not a CFT-type conformal vector");
    if (!a.is_homogeneous(2)) throw InhomogeneousInput("classify_v2 samples must lie in V_2");
    auto h = preimage_under_T(eng, a - omega);
    if (!h) throw AssertionFailed("V_2 conformal vector is not omega + Th");
    entries.push_back({*rep.central_charge, alg.coords(*h, 1)});
  }
  std::vector<bool> used(entries.size(), false);
  for (size_t i = 0; i < entries.size(); ++i) {
    if (used[i]) continue;
    Orbit orbit;
    orbit.central_charge = entries[i].charge;
    orbit.members.push_back(static_cast<int>(i));
    used[i] = true;
    for (size_t j = i + 1; j < entries.size(); ++j) {
      if (used[j] || !(entries[j].charge == entries[i].charge)) continue;
      orbit.members.push_back(static_cast<int>(j));
      used[j] = true;
      // Witness carrying sample i to sample j.
      OrbitWitness wit;
      wit.from = static_cast<int>(i);
      wit.to = static_cast<int>(j);
      std::optional<QMat> o;
      const auto& x = entries[i].h;
      const auto& y = entries[j].h;
      bool same = x == y;
      bool negated = true;
      for (size_t t = 0; t < x.size(); ++t) negated = negated && x[t] == -y[t];
      if (same) {
        o = QMat::identity(alg.rank());
        wit.kind = "identity";
      } else if (negated) {
        QMat neg = QMat::identity(alg.rank());
        neg *= Rational(-1);
        o = neg;
        wit.kind = "sign";
      } else if (alg.rank() == 2) {
        o = rotation_between(x, y);
        wit.kind = "rotation";
      }
      if (!o) {
        o = reflection_between(x, y);
        wit.kind = "reflection";
      }
      if (o) {
        wit.map = orthogonal_lift(eng, *o);
        wit.verified = wit.map.apply(samples[i], alg) == samples[j] &&
                       wit.map.apply(omega, alg) == omega;
      }
      if (!wit.verified) report.complete = false;
      orbit.witnesses.push_back(std::move(wit));
    }
    report.orbits.push_back(std::move(orbit));
  }
  return report;
}

}  // namespace voa
