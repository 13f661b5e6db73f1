#include "voa/endo.hpp"

#include <algorithm>

namespace voa {

Endo Endo::identity(const Algebra& alg) {
  Endo f;
  f.trust_ = alg.max_degree();
  for (int n = 0; n <= alg.max_degree(); ++n) f.set_block(n, n, QMat::identity(alg.dim(n)));
  return f;
}

Endo Endo::zero(const Algebra& alg) {
  Endo f;
  f.trust_ = alg.max_degree();
  return f;
}

void Endo::set_block(int from, int to, QMat m) {
  if (m.is_zero())
    blocks_.erase({from, to});
  else
    blocks_[{from, to}] = std::move(m);
}

const QMat* Endo::block(int from, int to) const {
  auto it = blocks_.find({from, to});
  return it == blocks_.end() ? nullptr : &it->second;
}

std::pair<int, int> Endo::shift_profile() const {
  if (blocks_.empty()) return {0, 0};
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [key, m] : blocks_) {
    int shift = key.second - key.first;
    if (first) {
      lo = hi = shift;
      first = false;
    } else {
      lo = std::min(lo, shift);
      hi = std::max(hi, shift);
    }
  }
  return {lo, hi};
}

GradedVector Endo::apply(const GradedVector& v, const Algebra& alg) const {
  GradedVector out;
  for (int n : v.degrees()) {
    std::vector<Rational> x = alg.coords(v, n);
    for (const auto& [key, m] : blocks_) {
      if (key.first != n) continue;
      std::vector<Rational> y = m.apply(x);
      out += alg.from_coords(key.second, y);
    }
  }
  return out;
}

Endo Endo::compose(const Endo& other, const Algebra& alg) const {
  Endo out;
  for (const auto& [gk, gm] : other.blocks_) {
    for (const auto& [fk, fm] : blocks_) {
      if (fk.first != gk.second) continue;
      QMat prod = fm * gm;
      if (prod.is_zero()) continue;
      auto key = std::make_pair(gk.first, fk.second);
      auto it = out.blocks_.find(key);
      if (it == out.blocks_.end())
        out.blocks_[key] = std::move(prod);
      else
        it->second = it->second + prod;
    }
  }
  for (auto it = out.blocks_.begin(); it != out.blocks_.end();)
    it = it->second.is_zero() ? out.blocks_.erase(it) : std::next(it);
  // Inputs that `other` may push above maxDegree are lost to `this`, so
  // trust shrinks by other's raising reach.
  int raise = std::max(0, other.shift_profile().second);
  out.trust_ = std::max(0, std::min(other.trust_, trust_ - raise));
  return out;
}

QMat Endo::assemble(const Algebra& alg) const {
  int n = alg.max_degree();
  int dim = alg.dim_upto(n);
  std::vector<int> offset(n + 2, 0);
  for (int d = 0; d <= n; ++d) offset[d + 1] = offset[d] + alg.dim(d);
  QMat m(dim, dim);
  for (const auto& [key, blk] : blocks_) {
    int c0 = offset[key.first], r0 = offset[key.second];
    for (int r = 0; r < blk.rows(); ++r)
      for (int c = 0; c < blk.cols(); ++c) m.at(r0 + r, c0 + c) = blk.at(r, c);
  }
  return m;
}

Endo Endo::from_assembled(const QMat& m, const Algebra& alg, int trust) {
  int n = alg.max_degree();
  std::vector<int> offset(n + 2, 0);
  for (int d = 0; d <= n; ++d) offset[d + 1] = offset[d] + alg.dim(d);
  Endo f;
  f.trust_ = trust;
  for (int from = 0; from <= n; ++from)
    for (int to = 0; to <= n; ++to) {
      QMat blk(alg.dim(to), alg.dim(from));
      bool nonzero = false;
      for (int r = 0; r < blk.rows(); ++r)
        for (int c = 0; c < blk.cols(); ++c) {
          blk.at(r, c) = m.at(offset[to] + r, offset[from] + c);
          nonzero = nonzero || sgn(blk.at(r, c)) != 0;
        }
      if (nonzero) f.blocks_[{from, to}] = std::move(blk);
    }
  return f;
}

std::optional<Endo> Endo::inverted(const Algebra& alg) const {
  auto inv = inverse(assemble(alg));
  if (!inv) return std::nullopt;
  // Inverting the truncation equals truncating the inverse for one-sided
  // (raising-only or lowering-only) operators; for mixed shifts the trust
  // degree already carries the caveat.
  return from_assembled(*inv, alg, trust_);
}

}  // namespace voa
