#include "voa/fock.hpp"

#include <algorithm>

namespace voa {

BasisState::BasisState(std::vector<Part> parts) : parts_(std::move(parts)) {
  for (const Part& p : parts_) {
    if (p.color < 1 || p.mode < 1) throw ConfigError("bad part: color and mode must be >= 1");
  }
  std::sort(parts_.begin(), parts_.end(), part_less);
}

int BasisState::degree() const {
  int d = 0;
  for (const Part& p : parts_) d += p.mode;
  return d;
}

BasisState BasisState::with_part(int color, int mode) const {
  std::vector<Part> ps = parts_;
  ps.push_back({color, mode});
  return BasisState(std::move(ps));
}

BasisState BasisState::without_part(int color, int mode) const {
  std::vector<Part> ps = parts_;
  auto it = std::find(ps.begin(), ps.end(), Part{color, mode});
  if (it == ps.end()) throw Error("without_part: part not present");
  ps.erase(it);
  BasisState s;
  s.parts_ = std::move(ps);  // removal keeps canonical order
  return s;
}

int BasisState::count_part(int color, int mode) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), Part{color, mode}));
}

bool BasisState::operator<(const BasisState& other) const {
  return std::lexicographical_compare(parts_.begin(), parts_.end(), other.parts_.begin(),
                                      other.parts_.end(), part_less);
}

GradedVector GradedVector::term(const BasisState& s, const Rational& c) {
  GradedVector v;
  v.add_term(s, c);
  return v;
}

Rational GradedVector::coeff(const BasisState& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedVector::add_term(const BasisState& s, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int GradedVector::max_degree() const {
  int d = -1;
  for (const auto& [s, c] : terms_) d = std::max(d, s.degree());
  return d;
}

int GradedVector::min_degree() const {
  if (terms_.empty()) return -1;
  int d = -1;
  for (const auto& [s, c] : terms_) {
    int sd = s.degree();
    if (d < 0 || sd < d) d = sd;
  }
  return d;
}

std::vector<int> GradedVector::degrees() const {
  std::vector<int> ds;
  for (const auto& [s, c] : terms_) {
    int d = s.degree();
    if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

bool GradedVector::is_homogeneous(int n) const {
  for (const auto& [s, c] : terms_)
    if (s.degree() != n) return false;
  return true;
}

GradedVector GradedVector::project(int n) const {
  GradedVector r;
  for (const auto& [s, c] : terms_)
    if (s.degree() == n) r.add_term(s, c);
  return r;
}

GradedVector& GradedVector::operator+=(const GradedVector& other) {
  for (const auto& [s, c] : other.terms_) add_term(s, c);
  return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& other) {
  for (const auto& [s, c] : other.terms_) add_term(s, -c);
  return *this;
}

GradedVector& GradedVector::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, v] : terms_) v *= c;
  return *this;
}

GradedVector GradedVector::operator-() const {
  GradedVector r = *this;
  for (auto& [s, v] : r.terms_) v = -v;
  return r;
}

void AlgebraConfig::validate() const {
  if (rank < 1) throw ConfigError("rank must be >= 1");
  if (sgn(level) == 0) throw ConfigError("level must be nonzero");
  if (max_degree < 4) throw ConfigError("maxDegree must be >= 4");
}

namespace {

// Colored partitions of n: parts are chosen left to right weakly
// increasing under part_less, so each multiset appears exactly once with
// its part list already in canonical order.
void enumerate_rec(int remaining, int rank, bool have_min, Part min_part, std::vector<Part>& acc,
                   std::vector<BasisState>& out) {
  if (remaining == 0) {
    out.push_back(BasisState(acc));
    return;
  }
  for (int color = have_min ? min_part.color : 1; color <= rank; ++color) {
    int mode_hi = remaining;
    if (have_min && color == min_part.color) mode_hi = std::min(mode_hi, min_part.mode);
    for (int mode = mode_hi; mode >= 1; --mode) {
      Part p{color, mode};
      acc.push_back(p);
      enumerate_rec(remaining - mode, rank, true, p, acc, out);
      acc.pop_back();
    }
  }
}

}  // namespace

Algebra::Algebra(AlgebraConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  basis_.resize(cfg_.max_degree + 1);
  index_.resize(cfg_.max_degree + 1);
  built_.assign(cfg_.max_degree + 1, false);
}

const std::vector<BasisState>& Algebra::basis(int n) const {
  if (n < 0 || n > cfg_.max_degree)
    throw TruncationExceeded("basis degree " + std::to_string(n) + " outside [0, " +
                             std::to_string(cfg_.max_degree) + "]");
  if (!built_[n]) {
    std::vector<Part> acc;
    enumerate_rec(n, cfg_.rank, false, Part{}, acc, basis_[n]);
    std::sort(basis_[n].begin(), basis_[n].end());
    for (int i = 0; i < static_cast<int>(basis_[n].size()); ++i) index_[n][basis_[n][i]] = i;
    built_[n] = true;
  }
  return basis_[n];
}

int Algebra::dim(int n) const { return static_cast<int>(basis(n).size()); }

int Algebra::dim_upto(int n) const {
  int d = 0;
  for (int k = 0; k <= n; ++k) d += dim(k);
  return d;
}

int Algebra::index_of(const BasisState& s) const {
  int n = s.degree();
  basis(n);  // builds the index
  auto it = index_[n].find(s);
  if (it == index_[n].end()) throw Error("state not in basis (bad color?)");
  return it->second;
}

GradedVector Algebra::vacuum() const { return GradedVector::term(BasisState::vacuum(), 1); }

GradedVector Algebra::current(int color) const {
  if (color < 1 || color > cfg_.rank) throw ConfigError("current color out of range");
  return GradedVector::term(BasisState({{color, 1}}), 1);
}

GradedVector Algebra::omega() const {
  GradedVector w;
  Rational half_inv_level = rat(1, 2) / cfg_.level;
  for (int i = 1; i <= cfg_.rank; ++i)
    w.add_term(BasisState({{i, 1}, {i, 1}}), half_inv_level);
  return w;
}

std::vector<Rational> Algebra::coords(const GradedVector& v, int n) const {
  std::vector<Rational> x(dim(n), Rational(0));
  for (const auto& [s, c] : v.terms())
    if (s.degree() == n) x[index_of(s)] = c;
  return x;
}

GradedVector Algebra::from_coords(int n, const std::vector<Rational>& x) const {
  const auto& b = basis(n);
  if (x.size() != b.size()) throw Error("coordinate length mismatch");
  GradedVector v;
  for (size_t i = 0; i < x.size(); ++i) v.add_term(b[i], x[i]);
  return v;
}

GradedVector random_homogeneous(const Algebra& alg, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  const auto& b = alg.basis(degree);
  GradedVector v;
  do {
    v = GradedVector();
    for (const BasisState& s : b) v.add_term(s, rat(num(rng), den(rng)));
  } while (v.is_zero());
  return v;
}

}  // namespace voa
