#pragma once

#include "screenlab/disclosure_game.hpp"

#include <json.hpp>

#include <string>

namespace screenlab {

// Schema:
// {name, gamma, m, b,
//  value_function: {"quadratic": {"a": "50", "c": "1/4"}} | {"table": ["0", ...]},
//  theta_p: {min_index, max_index}, weight_denominator, level_cap,
//  belief: {message: {min_index, max_index}, probs: {"1": "1/20", ...}},
//  explicit_families: [[belief, belief, ...], ...]}
// Rationals are decimal or "p/q" strings; plain JSON numbers are accepted
// for integers only. Missing message ranges default to theta_p.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);

MarginalBelief belief_from_json(const nlohmann::json& j, const TypeRange& default_message, int m);
nlohmann::json belief_to_json(const MarginalBelief& p);

// Built-in fixtures for the reproduction targets.
Scenario example1_scenario();
Scenario three_type_high_scenario();
Scenario three_type_low_scenario();
Scenario builtin_scenario(const std::string& target);

// The value function used by the three-type high-cost fixture: marginal
// value 9.055 - q up to q = 6, then 3.055 - (q - 6)/100.
ValueFunction kinked_value_function(int b);

}  // namespace screenlab
