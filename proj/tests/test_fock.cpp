#include <doctest.h>

#include <random>

#include "voa/fock.hpp"

using namespace voa;

namespace {

// Independent oracle: number of r-colored partitions of n with parts of
// size <= cap per color, by plain recursion on (n, cap, color).
long count_colored_partitions(int n, int cap, int colors) {
  if (n == 0) return colors >= 0 ? 1 : 0;
  if (colors == 0 || cap == 0) return 0;
  long total = 0;
  // number of parts of size cap in the last color: 0..n/cap
  for (int uses = 0; uses * cap <= n; ++uses) {
    int rest = n - uses * cap;
    if (cap > 1)
      total += count_colored_partitions(rest, cap - 1, colors) * 1;
    else if (rest == 0)
      total += 1;
    else
      total += 0;
  }
  return total;
}

long colored_partitions(int n, int colors) {
  // convolve single-color counts
  if (colors == 1) return count_colored_partitions(n, n == 0 ? 1 : n, 1);
  long total = 0;
  for (int k = 0; k <= n; ++k)
    total += count_colored_partitions(k, k == 0 ? 1 : k, 1) * colored_partitions(n - k, colors - 1);
  return total;
}

Algebra make(int rank, int n) { return Algebra({rank, rat(1), n}); }

}  // namespace

TEST_CASE("config invariants") {
  CHECK_THROWS_AS(Algebra({0, rat(1), 6}), ConfigError);
  CHECK_THROWS_AS(Algebra({1, rat(0), 6}), ConfigError);
  CHECK_THROWS_AS(Algebra({1, rat(1), 3}), ConfigError);
  CHECK_NOTHROW(Algebra({1, rat(1), 4}));
}

TEST_CASE("canonical part order inside states") {
  BasisState s({{1, 1}, {1, 2}});
  CHECK(s.parts()[0].mode == 2);  // color asc, mode desc
  CHECK(s.parts()[1].mode == 1);
  BasisState t({{2, 3}, {1, 1}, {2, 5}});
  CHECK(t.parts()[0].color == 1);
  CHECK(t.parts()[1] == Part{2, 5});
  CHECK(t.parts()[2] == Part{2, 3});
  CHECK(t.degree() == 9);
}

TEST_CASE("enumeration matches frozen examples") {
  Algebra alg = make(1, 6);
  CHECK(alg.dim(0) == 1);
  CHECK(alg.basis(0)[0].is_vacuum());
  // rank 1, n=2: [h(-2)|0>, h(-1)h(-1)|0>]
  const auto& b2 = alg.basis(2);
  REQUIRE(b2.size() == 2);
  CHECK(b2[0] == BasisState({{1, 2}}));
  CHECK(b2[1] == BasisState({{1, 1}, {1, 1}}));
  Algebra alg2 = make(2, 6);
  CHECK(alg2.dim(2) == 5);
}

TEST_CASE("dims against the partition-count oracle") {
  for (int rank = 1; rank <= 3; ++rank) {
    Algebra alg = make(rank, 6);
    for (int n = 0; n <= 6; ++n) CHECK(alg.dim(n) == colored_partitions(n, rank));
  }
  // frozen values
  Algebra r1 = make(1, 5);
  int expected[] = {1, 1, 2, 3, 5, 7};
  for (int n = 0; n <= 5; ++n) CHECK(r1.dim(n) == expected[n]);
  CHECK(make(2, 6).dim(6) == 65);
}

TEST_CASE("basis order is strictly increasing and indexable") {
  Algebra alg = make(2, 6);
  for (int n = 0; n <= 6; ++n) {
    const auto& b = alg.basis(n);
    for (size_t i = 0; i + 1 < b.size(); ++i) CHECK(b[i] < b[i + 1]);
    for (size_t i = 0; i < b.size(); ++i) CHECK(alg.index_of(b[i]) == static_cast<int>(i));
  }
  CHECK_THROWS_AS(alg.basis(7), TruncationExceeded);
  CHECK_THROWS_AS(alg.basis(-1), TruncationExceeded);
}

TEST_CASE("graded vector arithmetic and zero discipline") {
  Algebra alg = make(1, 6);
  GradedVector v = alg.current(1);
  GradedVector w = v;
  w -= v;
  CHECK(w.is_zero());
  CHECK(w.terms().empty());  // no zero coefficients stored
  v *= rat(0);
  CHECK(v.is_zero());
  GradedVector u = alg.omega() + alg.current(1);
  CHECK(u.degrees() == std::vector<int>{1, 2});
  CHECK(u.max_degree() == 2);
  CHECK(u.min_degree() == 1);
}

TEST_CASE("projection round trip") {
  Algebra alg = make(2, 6);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    GradedVector v;
    for (int n = 0; n <= 6; n += 2) v += random_homogeneous(alg, n, rng);
    GradedVector back;
    for (int n = 0; n <= 6; ++n) back += v.project(n);
    CHECK(back == v);
    for (int n = 0; n <= 6; ++n) CHECK(v.project(n).is_homogeneous(n));
  }
}

TEST_CASE("omega normalization") {
  for (long lev : {1L, -1L, 3L}) {
    Algebra alg({2, rat(lev), 6});
    GradedVector w = alg.omega();
    CHECK(w.is_homogeneous(2));
    CHECK(w.coeff(BasisState({{1, 1}, {1, 1}})) == rat(1, 2 * lev));
    CHECK(w.coeff(BasisState({{2, 1}, {2, 1}})) == rat(1, 2 * lev));
  }
}
