#pragma once

#include <string>

#include "json.hpp"
#include "umbra/family.hpp"
#include "umbra/opmatrix.hpp"

namespace umbra {

using nlohmann::json;

// Rationals are encoded as ["num", "den"] decimal strings so that readers
// never overflow native integers.
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);

// {"var":"y","order":N,"coeffs":[["num","den"],...]}
json series_to_json(const YSeries<Rat>& s);
YSeries<Rat> series_from_json(const json& j);

// {"var":"x","coeffs":[["num","den"],...]}
json poly_to_json(const XPoly& p);
XPoly poly_from_json(const json& j);

// {"N":..,"raise":..,"window":..,"entries":[[...row...],...]}
json op_to_json(const OpMatrix& m);
OpMatrix op_from_json(const json& j);

// {"kind":"xi"|"binomial"|"fns"|"builtin","N":..,"data":...}, optional "Ny".
json family_to_json(const MonicFamily& fam, const std::string& kind, const json& data);
MonicFamily family_from_json(const json& j, FamilyOptions opts);

// Micro-grammar: builtin:<name> | binomial:<series-expr> | file:<path>.
MonicFamily parse_family_spec(const std::string& spec, const FamilyOptions& opts);

} // namespace umbra
