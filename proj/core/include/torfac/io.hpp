#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "torfac/desing.hpp"
#include "torfac/factorization.hpp"
#include "torfac/toroidal.hpp"

namespace torfac::io {

using json = nlohmann::json;

inline constexpr int kFormat = 1;

/// Numbers when they fit in 64 bits, decimal strings otherwise. Reading
/// accepts both; anything else throws InvalidInput.
json int_json(const Int& x);
Int int_from_json(const json& j);
json vec_json(const IntVec& v);
IntVec vec_from_json(const json& j);
/// Integers stay numbers; other values are "p/q" strings.
json rat_json(const Rat& x);
Rat rat_from_json(const json& j);

/// Parses text, mapping parse errors to InvalidInput.
json parse(std::string_view text);
/// Two-space indent, short arrays of scalars on one line, trailing newline.
std::string dump(const json& j);

/// { "format": 1, "ambient_rank", "cobordism", "rays", "maximal_cones" },
/// written from the compacted fan so equal fans give equal documents.
json fan_json(const Fan& fan);
json fan_body(const Fan& fan);  // same without "format"
Fan fan_from_json(const json& j, ValidateLevel level = ValidateLevel::Light);

json trace_entry_json(const TraceEntry& e);
/// One JSON document per line.
std::string trace_jsonl(const DesingTrace& trace);

json step_json(const FactorizationStep& step);
json factorization_json(const Factorization& f);

/// { "format": 1, "weights": [ { "circuit": [[...],...], "a": "p/q" }, ... ] }
WeightCertificate certificate_from_json(const json& j);

json boundaries_json(const BoundaryFans& b);
json weight_report_json(const WeightActionReport& r);

json ideal_json(const MonomialIdeal& ideal);
MonomialIdeal ideal_from_json(const json& j);
json newton_json(const NewtonSubdivision& ns);

}  // namespace torfac::io
