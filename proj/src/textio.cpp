#include "voa/textio.hpp"

#include <cctype>
#include <optional>

namespace voa {

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool consume_word(const std::string& w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) == 0) {
      pos += w.size();
      return true;
    }
    return false;
  }
  // Like consume_word, but refuses when the match continues alphabetically.
  bool consume_ident(const std::string& w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) != 0) return false;
    size_t end = pos + w.size();
    if (end < s.size() && std::isalnum(static_cast<unsigned char>(s[end]))) return false;
    pos = end;
    return true;
  }
  void expect(char c) {
    if (!consume(c)) throw ParseError("expected '" + std::string(1, c) + "' at position " +
                                      std::to_string(pos) + " in '" + s + "'");
  }
  std::optional<long> number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return std::nullopt;
    return std::stol(s.substr(start, pos - start));
  }
};

// A term is a product of scalar factors and at most one vector factor.
struct Term {
  Rational scalar = 1;
  std::optional<GradedVector> vec;

  GradedVector value(const Algebra& alg) const {
    GradedVector v = vec ? *vec : alg.vacuum();
    v *= scalar;
    return v;
  }
};

struct Parser {
  const ModeEngine& eng;
  Lexer lex;

  GradedVector vector() {
    GradedVector acc;
    bool negate = false;
    if (lex.consume('-'))
      negate = true;
    else
      lex.consume('+');
    acc += signed_term(negate);
    while (!lex.eof()) {
      if (lex.consume('+'))
        acc += signed_term(false);
      else if (lex.consume('-'))
        acc += signed_term(true);
      else
        break;
    }
    return acc;
  }

  GradedVector signed_term(bool negate) {
    Term t = term();
    GradedVector v = t.value(eng.algebra());
    if (negate) v *= Rational(-1);
    return v;
  }

  Term term() {
    Term t;
    apply_factor(t, false);
    while (true) {
      if (lex.consume('*'))
        apply_factor(t, false);
      else if (lex.consume('/'))
        apply_factor(t, true);
      else
        break;
    }
    return t;
  }

  void apply_factor(Term& t, bool divide) {
    if (auto n = lex.number()) {
      Rational r(*n);
      mul(t, r, divide);
      return;
    }
    if (lex.consume_ident("kappa")) {
      mul(t, eng.level(), divide);
      return;
    }
    // vector factors cannot be divided by
    if (divide) throw ParseError("division by a non-scalar factor");
    GradedVector v = atom();
    if (t.vec) throw ParseError("product of two vector factors");
    t.vec = std::move(v);
  }

  void mul(Term& t, const Rational& r, bool divide) {
    if (divide) {
      if (sgn(r) == 0) throw ParseError("division by zero");
      t.scalar /= r;
    } else {
      t.scalar *= r;
    }
  }

  GradedVector atom() {
    const Algebra& alg = eng.algebra();
    if (lex.consume_word("|0>")) return alg.vacuum();
    if (lex.consume_word("T")) {
      lex.expect('(');
      GradedVector inner = vector();
      lex.expect(')');
      return eng.translate(inner);
    }
    if (lex.consume('(')) {
      GradedVector inner = vector();
      lex.expect(')');
      return inner;
    }
    if (lex.consume_ident("w")) return alg.omega();
    if (lex.consume_word("h")) {
      auto color = lex.number();
      if (!color) throw ParseError("expected color digits after 'h'");
      if (lex.peek() != '(') {
        // alias h<i> = h_i(-1)|0>
        return alg.current(static_cast<int>(*color));
      }
      // state literal: h<c>(-m)h<c>(-m)...|0>
      std::vector<Part> parts;
      long c = *color;
      while (true) {
        lex.expect('(');
        lex.expect('-');
        auto m = lex.number();
        if (!m || *m < 1) throw ParseError("expected mode digits after '(-'");
        lex.expect(')');
        parts.push_back({static_cast<int>(c), static_cast<int>(*m)});
        if (lex.consume_word("|0>")) break;
        if (!lex.consume_word("h")) throw ParseError("state literal must end with |0>");
        auto c2 = lex.number();
        if (!c2) throw ParseError("expected color digits after 'h'");
        c = *c2;
        if (lex.peek() != '(') throw ParseError("state part needs a mode, e.g. h1(-2)");
      }
      BasisState s(parts);
      if (s.degree() > alg.max_degree())
        throw TruncationExceeded("state literal beyond maxDegree");
      for (const Part& p : s.parts())
        if (p.color > alg.rank()) throw ParseError("state color exceeds rank");
      return GradedVector::term(s, 1);
    }
    throw ParseError("unexpected input at position " + std::to_string(lex.pos) + " in '" +
                     lex.s + "'");
  }
};

}  // namespace

GradedVector parse_vector(const ModeEngine& eng, const std::string& text) {
  Parser p{eng, Lexer{text}};
  GradedVector v = p.vector();
  if (!p.lex.eof())
    throw ParseError("trailing input at position " + std::to_string(p.lex.pos) + " in '" + text +
                     "'");
  return v;
}

std::string vector_to_string(const GradedVector& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [s, c] : v.terms()) {
    if (!out.empty()) out += " + ";
    std::string coeff = rat_str(c);
    std::string state;
    for (const Part& p : s.parts())
      state += "h" + std::to_string(p.color) + "(-" + std::to_string(p.mode) + ")";
    state += "|0>";
    if (coeff == "1")
      out += state;
    else
      out += coeff + "*" + state;
  }
  return out;
}

nlohmann::json vector_to_json(const GradedVector& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [s, c] : v.terms()) {
    nlohmann::json state = nlohmann::json::array();
    for (const Part& p : s.parts()) state.push_back({p.color, p.mode});
    terms.push_back({{"state", state}, {"coeff", rat_str(c)}});
  }
  return {{"terms", terms}};
}

GradedVector vector_from_json(const Algebra& alg, const nlohmann::json& j) {
  GradedVector v;
  for (const auto& t : j.at("terms")) {
    std::vector<Part> parts;
    for (const auto& p : t.at("state"))
      parts.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    BasisState s(parts);
    if (s.degree() > alg.max_degree()) throw TruncationExceeded("vector term beyond maxDegree");
    v.add_term(s, rat_parse(t.at("coeff").get<std::string>()));
  }
  return v;
}

nlohmann::json qmat_to_json(const QMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rat_str(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

namespace {

QMat qmat_from_json(const nlohmann::json& j, int rows, int cols) {
  QMat m(rows, cols);
  if (static_cast<int>(j.size()) != rows) throw ParseError("matrix row count mismatch");
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) throw ParseError("matrix column count mismatch");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rat_parse(j[r][c].get<std::string>());
  }
  return m;
}

}  // namespace

nlohmann::json endo_to_json(const Endo& f) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [key, m] : f.blocks())
    blocks.push_back({{"from", key.first}, {"to", key.second}, {"matrix", qmat_to_json(m)}});
  return {{"blocks", blocks}, {"trust_degree", f.trust_degree()}};
}

Endo endo_from_json(const Algebra& alg, const nlohmann::json& j) {
  Endo f;
  f.set_trust_degree(j.at("trust_degree").get<int>());
  for (const auto& b : j.at("blocks")) {
    int from = b.at("from").get<int>();
    int to = b.at("to").get<int>();
    if (from < 0 || from > alg.max_degree() || to < 0 || to > alg.max_degree())
      throw ParseError("endo block degree out of range");
    f.set_block(from, to, qmat_from_json(b.at("matrix"), alg.dim(to), alg.dim(from)));
  }
  return f;
}

nlohmann::json conformal_report_to_json(const ConformalReport& r) {
  nlohmann::json j;
  j["ope_ok"] = {r.ope_ok[0], r.ope_ok[1], r.ope_ok[2]};
  j["derivation_ok"] = r.derivation_ok;
  if (r.grading) {
    nlohmann::json g;
    switch (r.grading->status) {
      case EigenStatus::ok: g["status"] = "ok"; break;
      case EigenStatus::not_semisimple: g["status"] = "not_semisimple"; break;
      case EigenStatus::non_integer_eigenvalue: g["status"] = "non_integer_eigenvalue"; break;
    }
    if (!r.grading->detail.empty()) g["detail"] = r.grading->detail;
    g["eigenvalues"] = r.grading->eigenvalues;
    nlohmann::json dims = nlohmann::json::array();
    for (const auto& [n, vecs] : r.grading->eigenbasis) dims.push_back({n, vecs.size()});
    g["dims"] = dims;
    j["grading"] = g;
  } else {
    j["grading"] = nullptr;
  }
  j["cft_ok"] = {r.cft_ok[0], r.cft_ok[1], r.cft_ok[2]};
  j["scft_ok"] = r.scft_ok;
  j["central_charge"] = r.central_charge ? nlohmann::json(rat_str(*r.central_charge))
                                         : nlohmann::json(nullptr);
  j["trust_degree"] = r.trust_degree;
  j["conformal"] = r.conformal();
  j["cft"] = r.cft();
  return j;
}

nlohmann::json membership_to_json(const MembershipReport& r) {
  nlohmann::json j;
  j["is_aut"] = r.is_aut;
  j["is_aut_plus"] = r.is_aut_plus;
  j["is_aut_zero"] = r.is_aut_zero;
  j["is_aut_minus"] = r.is_aut_minus;
  j["fixes_omega"] = r.fixes_omega;
  j["vacuum_fixed"] = r.vacuum_fixed;
  j["invertible"] = r.invertible;
  j["products_preserved"] = r.products_preserved;
  j["checked_state_degree"] = r.checked_state_degree;
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  return j;
}

nlohmann::json orbit_report_to_json(const OrbitReport& r, const Algebra&) {
  nlohmann::json orbits = nlohmann::json::array();
  for (const Orbit& o : r.orbits) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const OrbitWitness& w : o.witnesses)
      witnesses.push_back(
          {{"from", w.from}, {"to", w.to}, {"kind", w.kind}, {"verified", w.verified}});
    orbits.push_back({{"central_charge", rat_str(o.central_charge)},
                      {"members", o.members},
                      {"witnesses", witnesses}});
  }
  return {{"orbits", orbits}, {"complete", r.complete}};
}

nlohmann::json gram_to_json(const QMat& g) { return {{"gram", qmat_to_json(g)}}; }

}  // namespace voa
