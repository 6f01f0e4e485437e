#pragma once

// JSON reports and the structural schema checks applied to every file the
// tool emits. The schema texts are embedded at configure time from the same
// files shipped in schemas/.

#include <string>
#include <vector>

#include "json.hpp"

#include "dynkin/config.hpp"
#include "dynkin/game.hpp"
#include "dynkin/mc.hpp"

namespace dynkin::cli {

const char* solution_schema_text();
const char* verify_schema_text();

nlohmann::ordered_json model_json(const levy::Model& m);
nlohmann::ordered_json solution_json(const game::Solution& s);

struct VerifyOutcome {
    nlohmann::ordered_json doc;
    bool pass = false;
    bool certified = false;
};

// Runs the full verification battery for an already-solved game: transform
// identity, extrema laws (gated only for the exactly simulated families),
// payoff agreement on a 9-point grid spanning [x_inf - 1, x_sup + 1], and
// the saddle inequalities at the midpoint of the thresholds.
VerifyOutcome run_verify(const game::Solution& s, const RunConfig& cfg);

// Structural validation against the subset of JSON Schema the shipped
// schemas use: type, properties, required, additionalProperties, items,
// enum, minimum/maximum. Returns one message per violation, empty on
// success.
std::vector<std::string> schema_errors(const nlohmann::json& doc,
                                       const nlohmann::json& schema);

}  // namespace dynkin::cli
