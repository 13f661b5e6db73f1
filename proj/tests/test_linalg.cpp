#include <doctest.h>

#include <random>

#include "voa/linalg.hpp"

using namespace voa;

namespace {

QMat from_rows(const std::vector<std::vector<long>>& rows) {
  QMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rat(rows[r][c]);
  return m;
}

}  // namespace

TEST_CASE("solve and inverse") {
  QMat a = from_rows({{2, 1}, {1, 1}});
  auto x = solve(a, {rat(3), rat(2)});
  REQUIRE(x);
  CHECK((*x)[0] == rat(1));
  CHECK((*x)[1] == rat(1));
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK((*inv) * a == QMat::identity(2));
  QMat singular = from_rows({{1, 2}, {2, 4}});
  CHECK(!inverse(singular));
  CHECK(!solve(singular, {rat(1), rat(0)}));
  CHECK(solve(singular, {rat(1), rat(2)}).has_value());
}

TEST_CASE("nullspace") {
  QMat a = from_rows({{1, 2, 3}, {2, 4, 6}});
  auto ns = nullspace(a);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) {
    auto img = a.apply(v);
    for (const auto& c : img) CHECK(sgn(c) == 0);
  }
  CHECK(rank(a) == 1);
}

TEST_CASE("ldl positivity and witness") {
  QMat pd = from_rows({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  auto rep = ldl_positivity(pd);
  CHECK(rep.positive_definite);
  CHECK(rep.leading_minors == std::vector<Rational>{rat(2), rat(3), rat(4)});

  QMat indef = from_rows({{1, 2}, {2, 1}});
  auto bad = ldl_positivity(indef);
  CHECK(!bad.positive_definite);
  REQUIRE(bad.witness);
  // witness quadratic form equals the failing pivot
  const auto& y = *bad.witness;
  Rational q(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q += y[i] * indef.at(i, j) * y[j];
  CHECK(q == bad.pivots.back());
  CHECK(sgn(q) <= 0);

  QMat deg1 = from_rows({{-1}});
  auto neg = ldl_positivity(deg1);
  CHECK(!neg.positive_definite);
  CHECK(neg.pivots.back() == rat(-1));
}

TEST_CASE("minimal polynomial") {
  QMat d = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  QPoly m = minimal_polynomial(d);
  // (x-1)(x-2) = x^2 - 3x + 2
  CHECK(m == QPoly{rat(2), rat(-3), rat(1)});
  QMat nilp = from_rows({{0, 1}, {0, 0}});
  CHECK(minimal_polynomial(nilp) == QPoly{rat(0), rat(0), rat(1)});
  // not squarefree is detected by the gcd
  QPoly g = poly_gcd(QPoly{rat(0), rat(0), rat(1)}, poly_derivative(QPoly{rat(0), rat(0), rat(1)}));
  CHECK(poly_deg(g) == 1);
}

TEST_CASE("integer roots of squarefree polynomials") {
  // (x-1)(x-3)(x+7)
  QPoly p = poly_mul(poly_mul(QPoly{rat(-1), rat(1)}, QPoly{rat(-3), rat(1)}), QPoly{rat(7), rat(1)});
  auto roots = integer_roots_of_squarefree(p);
  REQUIRE(roots);
  CHECK(*roots == std::vector<Integer>{Integer(-7), Integer(1), Integer(3)});

  CHECK(!integer_roots_of_squarefree(QPoly{rat(-2), rat(0), rat(1)}));  // x^2-2 irrational
  CHECK(!integer_roots_of_squarefree(QPoly{rat(1), rat(0), rat(1)}));   // x^2+1 complex
  // (x - 1/2)(x - 2): rational non-integer root
  QPoly q = poly_mul(QPoly{rat(-1, 2), rat(1)}, QPoly{rat(-2), rat(1)});
  CHECK(!integer_roots_of_squarefree(q));
  // large roots
  QPoly big = poly_mul(QPoly{rat(-1000003), rat(1)}, QPoly{rat(41), rat(1)});
  auto r2 = integer_roots_of_squarefree(big);
  REQUIRE(r2);
  CHECK(*r2 == std::vector<Integer>{Integer(-41), Integer(1000003)});
}

TEST_CASE("random diagonalizable matrices round trip") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> eig(-3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 4;
    QMat p(n, n);
    do {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) p.at(r, c) = rat(coef(rng));
    } while (!inverse(p));
    QMat d(n, n);
    std::vector<int> lams;
    for (int i = 0; i < n; ++i) {
      lams.push_back(eig(rng));
      d.at(i, i) = rat(lams[i]);
    }
    QMat a = p * d * *inverse(p);
    QPoly m = minimal_polynomial(a);
    CHECK(poly_deg(poly_gcd(m, poly_derivative(m))) == 0);
    auto roots = integer_roots_of_squarefree(m);
    REQUIRE(roots);
    std::sort(lams.begin(), lams.end());
    lams.erase(std::unique(lams.begin(), lams.end()), lams.end());
    REQUIRE(roots->size() == lams.size());
    for (size_t i = 0; i < lams.size(); ++i) CHECK((*roots)[i] == Integer(lams[i]));
    // eigenspace dimensions fill the space
    int total = 0;
    for (const Integer& lam : *roots) {
      QMat shifted = a;
      for (int i = 0; i < n; ++i) shifted.at(i, i) -= Rational(lam);
      total += static_cast<int>(nullspace(shifted).size());
    }
    CHECK(total == n);
  }
}
