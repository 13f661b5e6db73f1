#include "voa/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace voa {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool QMat::is_zero() const {
  for (const Rational& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMat operator*(const QMat& a, const QMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  QMat m(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const Rational& ark = a.at(r, k);
      if (sgn(ark) == 0) continue;
      for (int c = 0; c < b.cols(); ++c) {
        const Rational& bkc = b.at(k, c);
        if (sgn(bkc) != 0) m.at(r, c) += ark * bkc;
      }
    }
  return m;
}

QMat operator+(QMat a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) a.at(r, c) += b.at(r, c);
  return a;
}

QMat operator-(QMat a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) a.at(r, c) -= b.at(r, c);
  return a;
}

QMat& QMat::operator*=(const Rational& c) {
  for (Rational& x : a_) x *= c;
  return *this;
}

std::vector<Rational> QMat::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("matvec shape mismatch");
  std::vector<Rational> y(rows_, Rational(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      const Rational& m = at(r, c);
      if (sgn(m) != 0 && sgn(x[c]) != 0) y[r] += m * x[c];
    }
  return y;
}

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r)
      if (sgn(m.at(r, col)) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(row, c));
    Rational inv = 1 / m.at(row, col);
    for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      Rational f = m.at(r, col);
      if (sgn(f) == 0) continue;
      for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(QMat m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Rational>> nullspace(const QMat& a) {
  QMat m = a;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(a.cols(), Rational(0));
    x[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m.at(static_cast<int>(r), free);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const QMat& a, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve shape mismatch");
  QMat aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // inconsistent
  std::vector<Rational> x(a.cols(), Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
  return x;
}

std::optional<QMat> inverse(const QMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  int n = a.rows();
  QMat aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n + r) = 1;
  }
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
  QMat inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

LdlReport ldl_positivity(const QMat& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("ldl of non-square matrix");
  int n = g.rows();
  LdlReport rep;
  rep.positive_definite = true;
  QMat l = QMat::identity(n);
  std::vector<Rational> d;
  Rational minor(1);
  for (int k = 0; k < n; ++k) {
    Rational dk = g.at(k, k);
    for (int j = 0; j < k; ++j) dk -= l.at(k, j) * l.at(k, j) * d[j];
    d.push_back(dk);
    minor *= dk;
    rep.pivots.push_back(dk);
    rep.leading_minors.push_back(minor);
    if (sgn(dk) <= 0) {
      rep.positive_definite = false;
      // Solve L^T y = e_k on the leading (k+1)-block: y^T G y = d_k <= 0.
      std::vector<Rational> y(n, Rational(0));
      y[k] = 1;
      for (int i = k - 1; i >= 0; --i) {
        Rational s(0);
        for (int j = i + 1; j <= k; ++j) s += l.at(j, i) * y[j];
        y[i] = -s;
      }
      rep.witness = y;
      return rep;
    }
    for (int i = k + 1; i < n; ++i) {
      Rational v = g.at(i, k);
      for (int j = 0; j < k; ++j) v -= l.at(i, j) * l.at(k, j) * d[j];
      l.at(i, k) = v / dk;
    }
  }
  return rep;
}

int poly_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly poly_normalize(QPoly p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (sgn(b[j]) != 0) r[i + j] += a[i] * b[j];
  }
  return poly_normalize(std::move(r));
}

std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b) {
  QPoly rem = poly_normalize(a);
  QPoly den = poly_normalize(b);
  if (den.empty()) throw std::invalid_argument("polynomial division by zero");
  if (rem.size() < den.size()) return {{}, rem};
  QPoly quot(rem.size() - den.size() + 1, Rational(0));
  Rational lead_inv = 1 / den.back();
  for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
    Rational f = rem[i] * lead_inv;
    if (sgn(f) == 0) continue;
    int shift = i - (static_cast<int>(den.size()) - 1);
    quot[shift] = f;
    for (size_t j = 0; j < den.size(); ++j) rem[shift + j] -= f * den[j];
  }
  return {poly_normalize(std::move(quot)), poly_normalize(std::move(rem))};
}

QPoly poly_derivative(const QPoly& p) {
  QPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * p[i]);
  return poly_normalize(std::move(d));
}

QPoly poly_monic(QPoly p) {
  p = poly_normalize(std::move(p));
  if (p.empty()) return p;
  Rational inv = 1 / p.back();
  for (Rational& c : p) c *= inv;
  return p;
}

QPoly poly_gcd(QPoly a, QPoly b) {
  a = poly_normalize(std::move(a));
  b = poly_normalize(std::move(b));
  while (!b.empty()) {
    QPoly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

Rational poly_eval(const QPoly& p, const Rational& x) {
  Rational v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

namespace {

// Monic dependence relation of the Krylov sequence v, Av, A^2 v, ...:
// the minimal q with q(A)v = 0.
QPoly local_minpoly(const QMat& a, std::vector<Rational> v) {
  int n = a.rows();
  // Reduced rows with bookkeeping of the combination that produced them:
  // rows[i] = (reduced vector, coefficients over the Krylov iterates).
  std::vector<std::vector<Rational>> reduced;
  std::vector<std::vector<Rational>> combo;
  std::vector<int> lead;
  std::vector<Rational> cur = std::move(v);
  std::vector<Rational> cur_combo{Rational(1)};
  for (int step = 0;; ++step) {
    std::vector<Rational> w = cur;
    std::vector<Rational> wc = cur_combo;
    for (size_t i = 0; i < reduced.size(); ++i) {
      const Rational& f = w[lead[i]];
      if (sgn(f) == 0) continue;
      Rational factor = f;  // reduced rows have unit leading coefficient
      for (int c = 0; c < n; ++c) w[c] -= factor * reduced[i][c];
      wc.resize(std::max(wc.size(), combo[i].size()), Rational(0));
      for (size_t c = 0; c < combo[i].size(); ++c) wc[c] -= factor * combo[i][c];
    }
    int ld = -1;
    for (int c = 0; c < n; ++c)
      if (sgn(w[c]) != 0) {
        ld = c;
        break;
      }
    if (ld < 0) return poly_monic(poly_normalize(std::move(wc)));
    Rational inv = 1 / w[ld];
    for (int c = 0; c < n; ++c) w[c] *= inv;
    for (Rational& x : wc) x *= inv;
    reduced.push_back(std::move(w));
    combo.push_back(std::move(wc));
    lead.push_back(ld);
    cur = a.apply(cur);
    cur_combo.insert(cur_combo.begin(), Rational(0));
  }
}

// Sign-preserving normalization by the largest absolute coefficient keeps
// Sturm chains from blowing up.
QPoly scale_down(QPoly p) {
  p = poly_normalize(std::move(p));
  if (p.empty()) return p;
  Rational m(0);
  for (const Rational& c : p) m = std::max(m, Rational(abs(c)));
  Rational inv = 1 / m;
  for (Rational& c : p) c *= inv;
  return p;
}

int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const QPoly& p : chain) {
    int s = sgn(poly_eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

QPoly minimal_polynomial(const QMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("minpoly of non-square matrix");
  int n = a.rows();
  if (n == 0) return {Rational(1)};
  QPoly m{Rational(1)};
  for (int seed = 0; seed < n; ++seed) {
    // Skip seeds already annihilated by the current candidate.
    std::vector<Rational> e(n, Rational(0));
    e[seed] = 1;
    std::vector<Rational> r(n, Rational(0));
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
      r = a.apply(r);
      for (int i = 0; i < n; ++i) r[i] += *it * e[i];
    }
    bool zero = true;
    for (const Rational& x : r) zero = zero && sgn(x) == 0;
    if (zero) continue;
    QPoly q = local_minpoly(a, e);
    QPoly g = poly_gcd(m, q);
    m = poly_mul(m, poly_divmod(q, g).first);  // lcm
    m = poly_monic(std::move(m));
    if (poly_deg(m) == n) break;
  }
  return m;
}

std::optional<std::vector<Integer>> integer_roots_of_squarefree(QPoly p) {
  p = poly_monic(poly_normalize(std::move(p)));
  std::vector<Integer> roots;
  while (poly_deg(p) > 0) {
    if (poly_deg(p) == 1) {
      // x + c: root -c.
      Rational r = -p[0];
      if (r.get_den() != 1) return std::nullopt;
      roots.push_back(r.get_num());
      break;
    }
    // Cauchy bound: all real roots lie in [-B, B].
    Rational bound(1);
    for (size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, Rational(abs(p[i])));
    bound += 1;
    std::vector<QPoly> chain{scale_down(p), scale_down(poly_derivative(p))};
    while (poly_deg(chain.back()) > 0) {
      QPoly r = poly_divmod(chain[chain.size() - 2], chain.back()).second;
      if (r.empty()) break;  // cannot happen for squarefree p, kept defensively
      for (Rational& c : r) c = -c;
      chain.push_back(scale_down(std::move(r)));
    }
    int total = sign_variations(chain, -bound) - sign_variations(chain, bound);
    if (total < poly_deg(p)) return std::nullopt;  // complex roots present
    // Isolate one root, refine to width < 1/2, read off the integer.
    Rational lo = -bound, hi = bound;
    std::optional<Rational> exact_hit;
    while (true) {
      Rational mid = (lo + hi) / 2;
      if (sgn(poly_eval(p, mid)) == 0) {
        exact_hit = mid;
        break;
      }
      int left = sign_variations(chain, lo) - sign_variations(chain, mid);
      if (left >= 1)
        hi = mid;
      else
        lo = mid;
      if (hi - lo < rat(1, 2)) {
        // At most one integer in (lo, hi].
        Integer cand;
        mpz_fdiv_q(cand.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        Rational candq(cand);
        int inside = sign_variations(chain, lo) - sign_variations(chain, hi);
        if (inside < 1) continue;  // root drifted out; keep bisecting
        if (candq > lo && candq <= hi && sgn(poly_eval(p, candq)) == 0) {
          exact_hit = candq;
          break;
        }
        return std::nullopt;  // isolated real root with no integer in reach
      }
    }
    if (exact_hit->get_den() != 1) return std::nullopt;
    roots.push_back(exact_hit->get_num());
    // Deflate by (x - root) and continue.
    QPoly lin{-*exact_hit, Rational(1)};
    auto [q, rem] = poly_divmod(p, lin);
    if (!rem.empty()) throw std::logic_error("exact root did not divide");
    p = std::move(q);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace voa
