#pragma once

#include <string>

#include <json.hpp>

#include "voa/autgroup.hpp"
#include "voa/conformal.hpp"
#include "voa/endo.hpp"
#include "voa/fock.hpp"

namespace voa {

// Text syntax for vectors, as used by the CLI and JSON files.
//
//   vector  := term (('+' | '-') term)*
//   term    := factor ('*' factor)*          (at most one vector factor)
//   factor  := rational | 'kappa' | atom
//   atom    := 'w' | 'h'<color> | state | 'T' '(' vector ')' | '(' vector ')'
//   state   := ('h'<color> '(' '-'<mode> ')')* '|0>'
//
// 'w' is omega for the configured rank and level, 'h<i>' is h_i(-1)|0>,
// 'kappa' is the configured level as a scalar, a bare rational scales the
// vacuum, and '/' divides by a scalar factor (so 1/2 reads as expected).
GradedVector parse_vector(const ModeEngine& eng, const std::string& text);

std::string vector_to_string(const GradedVector& v);

nlohmann::json vector_to_json(const GradedVector& v);
GradedVector vector_from_json(const Algebra& alg, const nlohmann::json& j);

nlohmann::json endo_to_json(const Endo& f);
Endo endo_from_json(const Algebra& alg, const nlohmann::json& j);

nlohmann::json conformal_report_to_json(const ConformalReport& r);
nlohmann::json membership_to_json(const MembershipReport& r);
nlohmann::json orbit_report_to_json(const OrbitReport& r, const Algebra& alg);
nlohmann::json gram_to_json(const QMat& g);
nlohmann::json qmat_to_json(const QMat& m);

}  // namespace voa
