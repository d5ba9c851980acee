#pragma once

#include <json.hpp>

#include "eaplan/ea.hpp"
#include "eaplan/mss.hpp"
#include "eaplan/search.hpp"
#include "eaplan/solve.hpp"

namespace eaplan::io {

using json = nlohmann::json;

// Costs serialize as exact strings ("80", "5/2", "2.5") plus a float field
// for quick reading.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const ea::ModelUpdate& u);
ea::ModelUpdate update_from_json(const json& j);

json to_json(const ea::ModelDiff& d);
json to_json(const ValidityReport& r);
json to_json(const search::Result& r, const PlanningTask& task);
json to_json(const ea::EASolution& s);
ea::EASolution solution_from_json(const json& j);
json to_json(const ea::SolutionReport& r);
json to_json(const ea::SolveOutcome& o);
json to_json(const mss::MssResult& r);

}  // namespace eaplan::io
