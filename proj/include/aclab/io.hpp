#pragma once

#include <nlohmann/json.hpp>

#include "aclab/cycle.hpp"
#include "aclab/period.hpp"

namespace aclab {

using json = nlohmann::json;

// Rationals serialize as canonical "num/den" strings throughout.
json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j);

json gram_to_json(const GramLattice& l);   // {"gram": [[...]], "labels": [...]}
json classvec_to_json(const ClassVec& v);  // plain integer array

// Pair description file:
// {"minimal": {"kind": "...", "N": int?}, "orientation": bool,
//  "log": [{"interior": {"component": i, "point": "num/den"}}
//          | {"interior_near": {"parent": k}}
//          | {"corner": {"edge": j}}]}
json pair_to_json(const AnticanonicalPair& p);
AnticanonicalPair pair_from_json(const json& j);
AnticanonicalPair load_pair(const std::string& path);

std::string minimal_kind_name(MinimalKind k);
MinimalKind minimal_kind_from_name(const std::string& s);

// Divisors: [{"component": i, "q": "num/den", "p": "num/den"}]
json divisor_to_json(const Deg0Divisor& d);
Deg0Divisor divisor_from_json(const json& j);

// PeriodHom: {"basis": [[ints]], "values": ["num/den"]}
json period_to_json(const PeriodHom& ph);

}  // namespace aclab
