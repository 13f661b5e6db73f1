#include "voa/conformal.hpp"

#include <algorithm>

#include "voa/linalg.hpp"

namespace voa {

int trust_degree_for(const ModeEngine& eng, const GradedVector& a) {
  int n = eng.max_degree();
  int dmax = std::max(2, a.max_degree());
  return std::min(n, n - (dmax - 2));
}

OpeVerdict check_ope(const ModeEngine& eng, const GradedVector& a) {
  OpeVerdict v;
  int dmax = a.max_degree();
  if (dmax < 0) {
    // a = 0 satisfies the three product conditions vacuously.
    v.eq1 = v.eq2 = v.eq3 = true;
    v.central_charge = Rational(0);
    return v;
  }
  if (2 * dmax - 2 > eng.max_degree())
    throw TruncationExceeded("a(1)a not verifiable: a has components of degree > (N+2)/2");
  GradedVector two_a = a;
  two_a *= 2;
  v.eq1 = eng.mode(a, 1, a) == two_a;
  GradedVector a3a = eng.mode(a, 3, a);
  v.eq2 = a3a.is_homogeneous(0);
  if (v.eq2) v.central_charge = Rational(2) * a3a.coeff(BasisState::vacuum());
  bool ok3 = eng.mode(a, 2, a).is_zero();
  // a(n)a vanishes identically for n > 2*dmax - 1 by degree.
  for (int n = 4; ok3 && n <= 2 * dmax - 1; ++n) ok3 = eng.mode(a, n, a).is_zero();
  v.eq3 = ok3;
  return v;
}

bool check_derivation(const ModeEngine& eng, const GradedVector& a) {
  const Algebra& alg = eng.algebra();
  int dmax = std::max(0, a.max_degree());
  int bound = std::min(alg.max_degree() - 1, alg.max_degree() - dmax + 1);
  for (int d = 0; d <= bound; ++d)
    for (const BasisState& s : alg.basis(d)) {
      GradedVector v = GradedVector::term(s, 1);
      if (!(eng.mode(a, 0, v) == eng.translate(v))) return false;
    }
  return true;
}

int EigenGrading::dim(int n) const {
  auto it = eigenbasis.find(n);
  return it == eigenbasis.end() ? 0 : static_cast<int>(it->second.size());
}

namespace {

// Triangular solve for a(1) = L(0) + R with R strictly shifting degree in
// one direction: the eigenvector anchored at v in V_n is v plus a tail
// determined degree by degree, and pr_{<=N}(a(1) w) = n w holds exactly.
GradedVector solve_anchored(const ModeEngine& eng, const GradedVector& a, const BasisState& v,
                            bool raising) {
  int n = v.degree();
  int top = eng.max_degree();
  GradedVector w = GradedVector::term(v, 1);
  auto sweep = [&](int m) {
    GradedVector rm = eng.mode_truncated(a, 1, w).first.project(m);
    if (!rm.is_zero()) {
      rm *= Rational(1) / Rational(n - m);
      w += rm;
    }
  };
  if (raising)
    for (int m = n + 1; m <= top; ++m) sweep(m);
  else
    for (int m = n - 1; m >= 0; --m) sweep(m);
  GradedVector residual = eng.mode_truncated(a, 1, w).first;
  GradedVector nw = w;
  nw *= Rational(n);
  if (!(residual == nw))
    throw AssertionFailed("anchored eigenvector solve failed: a(1) is not triangular over L(0)");
  return w;
}

struct BlockDecomp {
  EigenStatus status = EigenStatus::ok;
  std::string detail;
  // eigenvalue -> coordinate eigenvectors
  std::map<Integer, std::vector<std::vector<Rational>>> spaces;
};

// Exact eigen-decomposition of one rational matrix; semisimple with
// integer spectrum or a diagnosis.
BlockDecomp decompose_matrix(const QMat& m) {
  BlockDecomp out;
  if (m.rows() == 0) return out;
  QPoly mp = minimal_polynomial(m);
  QPoly g = poly_gcd(mp, poly_derivative(mp));
  if (poly_deg(g) > 0) {
    out.status = EigenStatus::not_semisimple;
    out.detail = "minimal polynomial is not squarefree";
    return out;
  }
  auto roots = integer_roots_of_squarefree(mp);
  if (!roots) {
    out.status = EigenStatus::non_integer_eigenvalue;
    out.detail = "spectrum contains a non-integer eigenvalue";
    return out;
  }
  int total = 0;
  for (const Integer& lam : *roots) {
    QMat shifted = m;
    for (int i = 0; i < m.rows(); ++i) shifted.at(i, i) -= Rational(lam);
    auto ker = nullspace(shifted);
    total += static_cast<int>(ker.size());
    out.spaces[lam] = std::move(ker);
  }
  if (total != m.rows())
    throw AssertionFailed("squarefree integer spectrum but eigenspaces do not fill the block");
  return out;
}

int to_int(const Integer& z) {
  if (!z.fits_sint_p()) throw Error("eigenvalue out of int range");
  return static_cast<int>(z.get_si());
}

}  // namespace

EigenGrading eigen_grading(const ModeEngine& eng, const GradedVector& a) {
  const Algebra& alg = eng.algebra();
  int top = alg.max_degree();
  EigenGrading g;
  g.trust_degree = trust_degree_for(eng, a);
  g.change_of_basis.set_trust_degree(g.trust_degree);

  bool has_raise = false, has_lower = false;
  for (int p : a.degrees()) {
    if (p == 0) continue;  // the vacuum component acts as zero in a(1)
    if (p > 2) has_raise = true;
    if (p < 2) has_lower = true;
  }
  bool diag_is_l0 = a.project(2) == alg.omega();

  auto finish_anchor_path = [&](bool raising) {
    for (int n = 0; n <= top; ++n) {
      for (const BasisState& v : alg.basis(n))
        g.eigenbasis[n].push_back(solve_anchored(eng, a, v, raising));
      g.eigenvalues.push_back(n);
    }
    // change of basis: anchor state -> its eigenvector
    for (int n = 0; n <= top; ++n) {
      const auto& basis = alg.basis(n);
      std::map<int, QMat> cols;
      for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
        const GradedVector& w = g.eigenbasis[n][j];
        for (int m : w.degrees()) {
          auto it = cols.find(m);
          if (it == cols.end()) it = cols.emplace(m, QMat(alg.dim(m), alg.dim(n))).first;
          std::vector<Rational> x = alg.coords(w, m);
          for (int r = 0; r < alg.dim(m); ++r) it->second.at(r, j) = x[r];
        }
      }
      for (auto& [m, blk] : cols) g.change_of_basis.set_block(n, m, std::move(blk));
    }
  };

  try {
    if (!has_raise && !has_lower) {
      // a(1) preserves each degree: exact per-block decomposition.
      std::vector<Integer> all;
      for (int d = 0; d <= top; ++d) {
        const auto& basis = alg.basis(d);
        QMat m(alg.dim(d), alg.dim(d));
        for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
          GradedVector img = eng.mode(a, 1, GradedVector::term(basis[j], 1));
          std::vector<Rational> x = alg.coords(img, d);
          for (int r = 0; r < alg.dim(d); ++r) m.at(r, j) = x[r];
        }
        BlockDecomp bd = decompose_matrix(m);
        if (bd.status != EigenStatus::ok) {
          g.status = bd.status;
          g.detail = "degree " + std::to_string(d) + " block: " + bd.detail;
          g.eigenbasis.clear();
          g.eigenvalues.clear();
          return g;
        }
        for (const auto& [lam, vecs] : bd.spaces) {
          int lam_i = to_int(lam);
          for (const auto& x : vecs) g.eigenbasis[lam_i].push_back(alg.from_coords(d, x));
          all.push_back(lam);
        }
        // change of basis per block: j-th basis state -> j-th eigenvector of
        // the block in (eigenvalue, kernel) order
        QMat c(alg.dim(d), alg.dim(d));
        int col = 0;
        for (const auto& [lam, vecs] : bd.spaces)
          for (const auto& x : vecs) {
            for (int r = 0; r < alg.dim(d); ++r) c.at(r, col) = x[r];
            ++col;
          }
        g.change_of_basis.set_block(d, d, std::move(c));
      }
      std::sort(all.begin(), all.end());
      for (const Integer& z : all) {
        int zi = to_int(z);
        if (g.eigenvalues.empty() || g.eigenvalues.back() != zi) g.eigenvalues.push_back(zi);
      }
      return g;
    }

    if (diag_is_l0 && !has_lower) {
      finish_anchor_path(true);
      return g;
    }
    if (diag_is_l0 && !has_raise) {
      finish_anchor_path(false);
      return g;
    }

    // Mixed shifts or a degree-2 part other than omega: decompose the
    // truncated operator pr_{<=t} a(1) on V_{<=t}.
    int t = g.trust_degree;
    std::vector<int> offset(t + 2, 0);
    for (int d = 0; d <= t; ++d) offset[d + 1] = offset[d] + alg.dim(d);
    int dim = offset[t + 1];
    QMat m(dim, dim);
    for (int d = 0; d <= t; ++d) {
      const auto& basis = alg.basis(d);
      for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
        GradedVector img = eng.mode_truncated(a, 1, GradedVector::term(basis[j], 1)).first;
        for (int e = 0; e <= t; ++e) {
          std::vector<Rational> x = alg.coords(img, e);
          for (int r = 0; r < alg.dim(e); ++r) m.at(offset[e] + r, offset[d] + j) = x[r];
        }
      }
    }
    BlockDecomp bd = decompose_matrix(m);
    if (bd.status != EigenStatus::ok) {
      g.status = bd.status;
      g.detail = bd.detail;
      return g;
    }
    for (const auto& [lam, vecs] : bd.spaces) {
      int lam_i = to_int(lam);
      g.eigenvalues.push_back(lam_i);
      for (const auto& x : vecs) {
        GradedVector w;
        for (int e = 0; e <= t; ++e)
          for (int r = 0; r < alg.dim(e); ++r)
            if (sgn(x[offset[e] + r]) != 0) w.add_term(alg.basis(e)[r], x[offset[e] + r]);
        g.eigenbasis[lam_i].push_back(std::move(w));
      }
    }
    std::sort(g.eigenvalues.begin(), g.eigenvalues.end());
    // change of basis: i-th state of V_{<=t} -> i-th eigenvector
    {
      std::vector<GradedVector> flat;
      for (const auto& [lam, vecs] : g.eigenbasis)
        for (const auto& w : vecs) flat.push_back(w);
      int col_index = 0;
      std::map<std::pair<int, int>, QMat> blocks;
      for (int d = 0; d <= t; ++d)
        for (int j = 0; j < alg.dim(d); ++j, ++col_index) {
          const GradedVector& w = flat[col_index];
          for (int e : w.degrees()) {
            auto key = std::make_pair(d, e);
            auto it = blocks.find(key);
            if (it == blocks.end()) it = blocks.emplace(key, QMat(alg.dim(e), alg.dim(d))).first;
            std::vector<Rational> x = alg.coords(w, e);
            for (int r = 0; r < alg.dim(e); ++r) it->second.at(r, j) = x[r];
          }
        }
      for (auto& [key, blk] : blocks) g.change_of_basis.set_block(key.first, key.second, std::move(blk));
    }
    return g;
  } catch (const TruncationExceeded& e) {
    g.status = EigenStatus::non_integer_eigenvalue;
    g.detail = std::string("truncation prevented the decomposition: ") + e.what();
    g.eigenbasis.clear();
    g.eigenvalues.clear();
    return g;
  }
}

CftVerdict check_cft(const ModeEngine& eng, const GradedVector& a, const EigenGrading& g) {
  CftVerdict v;
  if (!g.ok()) return v;
  v.eq6 = std::all_of(g.eigenvalues.begin(), g.eigenvalues.end(), [](int n) { return n >= 0; });
  v.eq7 = true;  // every V_n^a on the truncation is finite-dimensional; dims reported
  const BasisState vac = BasisState::vacuum();
  auto it = g.eigenbasis.find(0);
  v.eq8 = it != g.eigenbasis.end() && it->second.size() == 1 &&
          it->second.front().is_homogeneous(0) && sgn(it->second.front().coeff(vac)) != 0;
  return v;
}

bool check_scft(const ModeEngine& eng, const GradedVector& a, const EigenGrading& g) {
  if (!g.ok()) return false;
  auto it = g.eigenbasis.find(1);
  if (it == g.eigenbasis.end()) return true;  // V_1^a = 0
  for (const GradedVector& w : it->second)
    if (!eng.mode_truncated(a, 2, w).first.is_zero()) return false;
  return true;
}

bool ConformalReport::conformal() const {
  return ope_ok[0] && ope_ok[1] && ope_ok[2] && derivation_ok && grading && grading->ok();
}

bool ConformalReport::cft() const { return conformal() && cft_ok[0] && cft_ok[1] && cft_ok[2]; }

ConformalReport conformal_report(const ModeEngine& eng, const GradedVector& a) {
  ConformalReport r;
  r.trust_degree = trust_degree_for(eng, a);
  OpeVerdict ope = check_ope(eng, a);
  r.ope_ok[0] = ope.eq1;
  r.ope_ok[1] = ope.eq2;
  r.ope_ok[2] = ope.eq3;
  r.central_charge = ope.central_charge;
  r.derivation_ok = check_derivation(eng, a);
  r.grading = eigen_grading(eng, a);
  if (r.grading->ok()) {
    CftVerdict cv = check_cft(eng, a, *r.grading);
    r.cft_ok[0] = cv.eq6;
    r.cft_ok[1] = cv.eq7;
    r.cft_ok[2] = cv.eq8;
    if (r.cft()) r.scft_ok = check_scft(eng, a, *r.grading);
  }
  return r;
}

std::vector<GradedVector> j1_basis(const ModeEngine& eng) {
  const Algebra& alg = eng.algebra();
  int r = alg.dim(1);
  if (r == 0) return {};
  // Stack the coordinates of u_k(0) w over all basis states w; J_1 is the
  // kernel over the coefficient vector of u.
  std::vector<std::vector<Rational>> rows;
  for (int d = 0; d <= alg.max_degree(); ++d) {
    for (const BasisState& w : alg.basis(d)) {
      GradedVector wv = GradedVector::term(w, 1);
      std::vector<std::vector<Rational>> cols;
      for (int k = 0; k < r; ++k) {
        GradedVector img = eng.mode(GradedVector::term(alg.basis(1)[k], 1), 0, wv);
        cols.push_back(alg.coords(img, d));
      }
      for (int out = 0; out < alg.dim(d); ++out) {
        std::vector<Rational> row(r);
        bool nonzero = false;
        for (int k = 0; k < r; ++k) {
          row[k] = cols[k][out];
          nonzero = nonzero || sgn(row[k]) != 0;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
  QMat m(static_cast<int>(rows.size()), r);
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < r; ++k) m.at(i, k) = rows[i][k];
  std::vector<GradedVector> out;
  for (const auto& x : nullspace(m)) out.push_back(alg.from_coords(1, x));
  return out;
}

bool in_j1_span(const ModeEngine& eng, const GradedVector& v) {
  if (v.is_zero()) return true;
  if (!v.is_homogeneous(1)) return false;
  const Algebra& alg = eng.algebra();
  auto jb = j1_basis(eng);
  QMat m(alg.dim(1), static_cast<int>(jb.size()));
  for (int c = 0; c < static_cast<int>(jb.size()); ++c) {
    std::vector<Rational> x = alg.coords(jb[c], 1);
    for (int r = 0; r < alg.dim(1); ++r) m.at(r, c) = x[r];
  }
  return solve(m, alg.coords(v, 1)).has_value();
}

GradedVector lie_v1(const ModeEngine& eng, const GradedVector& u, const GradedVector& v) {
  if (!u.is_homogeneous(1) || !v.is_homogeneous(1))
    throw InhomogeneousInput("lie_v1 needs degree-1 vectors");
  return eng.mode(u, 0, v);
}

std::vector<GradedVector> v1_center(const ModeEngine& eng) {
  const Algebra& alg = eng.algebra();
  int r = alg.dim(1);
  if (r == 0) return {};
  QMat m(r * r, r);
  for (int k = 0; k < r; ++k) {
    GradedVector uk = GradedVector::term(alg.basis(1)[k], 1);
    for (int j = 0; j < r; ++j) {
      GradedVector img = eng.mode(uk, 0, GradedVector::term(alg.basis(1)[j], 1));
      std::vector<Rational> x = alg.coords(img, 1);
      for (int out = 0; out < r; ++out) m.at(j * r + out, k) = x[out];
    }
  }
  std::vector<GradedVector> out;
  for (const auto& x : nullspace(m)) out.push_back(alg.from_coords(1, x));
  return out;
}

std::pair<GradedVector, GradedVector> pr1_reduce(const ModeEngine& eng, const GradedVector& a) {
  OpeVerdict ope = check_ope(eng, a);
  if (!ope.all() || !check_derivation(eng, a))
    throw NotConformal("pr1_reduce requires the OPE and derivation conditions");
  GradedVector u = a.project(1);
  if (!in_j1_span(eng, u))
    throw AssertionFailed("pr_1(a) escapes J_1 although a satisfies the derivation condition");
  GradedVector a1 = eng.exp_v1_apply(-u, a);
  if (!a1.project(0).is_zero() || !a1.project(1).is_zero())
    throw AssertionFailed("exp(-pr_1(a)(1)) a kept components below degree 2");
  return {u, a1};
}

std::optional<GradedVector> preimage_under_T(const ModeEngine& eng, const GradedVector& v) {
  const Algebra& alg = eng.algebra();
  if (v.is_zero()) return GradedVector();
  if (!v.project(0).is_zero()) return std::nullopt;
  if (!v.project(1).is_zero()) return std::nullopt;  // Im T meets V_1 trivially
  GradedVector x;
  for (int d : v.degrees()) {
    int e = d - 1;
    QMat t(alg.dim(d), alg.dim(e));
    for (int j = 0; j < alg.dim(e); ++j) {
      GradedVector img = eng.translate(GradedVector::term(alg.basis(e)[j], 1));
      std::vector<Rational> col = alg.coords(img, d);
      for (int r = 0; r < alg.dim(d); ++r) t.at(r, j) = col[r];
    }
    auto sol = solve(t, alg.coords(v, d));
    if (!sol) return std::nullopt;
    x += alg.from_coords(e, *sol);
  }
  return x;
}

}  // namespace voa
