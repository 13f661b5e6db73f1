#pragma once

#include <map>
#include <utility>

#include "voa/linalg.hpp"
#include "voa/modes.hpp"

namespace voa {

// Graded block endomorphism of V_{<= N}. Block (from, to) has shape
// dim(to) x dim(from); absent blocks are zero. trust_degree bounds the
// input degrees on which the stored operator agrees with the untruncated
// one (composition with a degree-raising factor lowers it).
class Endo {
 public:
  Endo() = default;

  static Endo identity(const Algebra& alg);
  static Endo zero(const Algebra& alg);

  int trust_degree() const { return trust_; }
  void set_trust_degree(int t) { trust_ = t; }

  const std::map<std::pair<int, int>, QMat>& blocks() const { return blocks_; }
  // Inserts or overwrites one block; zero matrices are dropped.
  void set_block(int from, int to, QMat m);
  const QMat* block(int from, int to) const;

  // Extreme values of (to - from) over nonzero blocks; (0, 0) when empty.
  std::pair<int, int> shift_profile() const;

  GradedVector apply(const GradedVector& v, const Algebra& alg) const;

  // this after other (i.e. v -> this(other(v))), with trust bookkeeping.
  Endo compose(const Endo& other, const Algebra& alg) const;
  // Exact inverse of the assembled matrix on V_{<= N}; nullopt if singular.
  std::optional<Endo> inverted(const Algebra& alg) const;

  bool operator==(const Endo&) const = default;

  // Assembled square matrix on V_0 + ... + V_N in canonical basis order.
  QMat assemble(const Algebra& alg) const;
  static Endo from_assembled(const QMat& m, const Algebra& alg, int trust);

 private:
  std::map<std::pair<int, int>, QMat> blocks_;
  int trust_ = 0;
};

}  // namespace voa
