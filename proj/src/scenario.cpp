#include "screenlab/scenario.hpp"

#include <fstream>
#include <sstream>

namespace screenlab {

namespace {

Rational rational_field(const nlohmann::json& j, const std::string& what) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ScenarioError(what + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ScenarioError(what + " must be a rational string or an integer");
}

long int_field(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) throw ScenarioError("scenario is missing '" + key + "'");
    if (!j.at(key).is_number_integer()) throw ScenarioError("'" + key + "' must be an integer");
    return j.at(key).get<long>();
}

TypeRange range_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("min_index") || !j.contains("max_index"))
        throw ScenarioError(what + " needs min_index and max_index");
    return TypeRange{j.at("min_index").get<int>(), j.at("max_index").get<int>()};
}

nlohmann::json range_to_json(const TypeRange& r) { return {{"min_index", r.lo}, {"max_index", r.hi}}; }

}  // namespace

MarginalBelief belief_from_json(const nlohmann::json& j, const TypeRange& default_message, int m) {
    TypeRange message = j.contains("message") ? range_from_json(j.at("message"), "belief message") : default_message;
    if (message.empty() || message.lo < 1 || message.hi > m)
        throw ScenarioError("belief message " + message.label() + " is outside the type grid");
    if (!j.contains("probs") || !j.at("probs").is_object()) throw ScenarioError("belief needs a 'probs' object");
    std::vector<Rational> probs(static_cast<size_t>(message.size()), Rational(0));
    for (const auto& [k, val] : j.at("probs").items()) {
        int idx = 0;
        try {
            idx = std::stoi(k);
        } catch (const std::exception&) {
            throw ScenarioError("belief key '" + k + "' is not a type index");
        }
        if (!message.contains(idx)) throw ScenarioError("belief key " + k + " is outside message " + message.label());
        probs[static_cast<size_t>(idx - message.lo)] = rational_field(val, "probability of type " + k);
    }
    try {
        return make_belief(message, std::move(probs));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
}

nlohmann::json belief_to_json(const MarginalBelief& p) {
    nlohmann::json probs = nlohmann::json::object();
    for (int j = p.message.lo; j <= p.message.hi; ++j) probs[std::to_string(j)] = to_fraction(p.p(j));
    return {{"message", range_to_json(p.message)}, {"probs", probs}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
    Scenario s;
    s.name = j.value("name", std::string("scenario"));
    long gamma = int_field(j, "gamma");
    long m = int_field(j, "m");
    long b = int_field(j, "b");
    try {
        s.types = make_type_grid(gamma, static_cast<int>(m));
        s.quantities = make_quantity_grid(static_cast<int>(b));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    if (!j.contains("value_function")) throw ScenarioError("scenario is missing 'value_function'");
    const auto& vf = j.at("value_function");
    if (vf.contains("quadratic")) {
        const auto& qd = vf.at("quadratic");
        if (!qd.contains("a") || !qd.contains("c")) throw ScenarioError("quadratic value function needs 'a' and 'c'");
        s.v = make_value_function(QuadraticValue{rational_field(qd.at("a"), "a"), rational_field(qd.at("c"), "c")},
                                  static_cast<int>(b));
    } else if (vf.contains("table")) {
        std::vector<Rational> table;
        for (const auto& x : vf.at("table")) table.push_back(rational_field(x, "value table entry"));
        try {
            s.v = make_value_function(table, static_cast<int>(b));
        } catch (const std::invalid_argument& e) {
            throw ScenarioError(e.what());
        }
    } else {
        throw ScenarioError("value_function needs 'quadratic' or 'table'");
    }
    s.theta_p = j.contains("theta_p") ? range_from_json(j.at("theta_p"), "theta_p") : s.theta_bar();
    s.weight_denominator = j.contains("weight_denominator") ? int_field(j, "weight_denominator") : 1;
    s.level_cap = j.contains("level_cap") ? static_cast<int>(int_field(j, "level_cap")) : 20;
    if (j.contains("belief")) s.belief = belief_from_json(j.at("belief"), s.theta_p, s.types.m);
    if (j.contains("explicit_families")) {
        for (const auto& fam : j.at("explicit_families")) {
            BeliefFamily bf;
            for (const auto& member : fam) bf.members.push_back(belief_from_json(member, s.theta_p, s.types.m));
            s.explicit_families.push_back(std::move(bf));
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError("scenario file " + path + " is not valid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& x : s.v.values) table.push_back(to_fraction(x));
    nlohmann::json j = {
        {"name", s.name},
        {"gamma", s.types.gamma},
        {"m", s.types.m},
        {"b", s.quantities.b},
        {"value_function", {{"table", table}}},
        {"theta_p", range_to_json(s.theta_p)},
        {"weight_denominator", s.weight_denominator},
        {"level_cap", s.level_cap},
    };
    if (s.belief) j["belief"] = belief_to_json(*s.belief);
    if (!s.explicit_families.empty()) {
        nlohmann::json fams = nlohmann::json::array();
        for (const auto& f : s.explicit_families) {
            nlohmann::json members = nlohmann::json::array();
            for (const auto& m : f.members) members.push_back(belief_to_json(m));
            fams.push_back(members);
        }
        j["explicit_families"] = fams;
    }
    return j;
}

ValueFunction kinked_value_function(int b) {
    std::vector<Rational> table{Rational(0)};
    for (int q = 0; q < b; ++q) {
        Rational d = q <= 6 ? Rational(ratio(9055, 1000) - q) : Rational(ratio(3055, 1000) - ratio(q - 6, 100));
        table.push_back(table.back() + d);
    }
    return make_value_function(table, b);
}

Scenario example1_scenario() {
    Scenario s;
    s.name = "example1";
    s.types = make_type_grid(100, 5);
    s.quantities = make_quantity_grid(99);
    s.v = make_value_function(QuadraticValue{Rational(50), Rational(1, 4)}, 99);
    s.theta_p = TypeRange{1, 4};
    s.weight_denominator = 1;
    s.level_cap = 12;
    MarginalBelief known = make_belief(TypeRange{1, 4}, {Rational(1, 20), Rational(3, 20), Rational(3, 10), Rational(1, 2)});
    MarginalBelief full = make_belief(TypeRange{1, 5}, {Rational(0), Rational(0), Rational(0), Rational(89, 91), Rational(2, 91)});
    s.belief = known;
    s.explicit_families.push_back(BeliefFamily{{known, full}, {}});
    return s;
}

Scenario three_type_high_scenario() {
    Scenario s;
    s.name = "three-type-high";
    s.types = make_type_grid(100, 3);
    s.quantities = make_quantity_grid(99);
    s.v = kinked_value_function(99);
    s.theta_p = TypeRange{1, 2};
    s.weight_denominator = 2;
    s.level_cap = 12;
    return s;
}

Scenario three_type_low_scenario() {
    Scenario s;
    s.name = "three-type-low";
    s.types = make_type_grid(100, 3);
    s.quantities = make_quantity_grid(99);
    s.v = make_value_function(QuadraticValue{Rational(251, 5), Rational(1, 4)}, 99);
    s.theta_p = TypeRange{2, 3};
    s.weight_denominator = 3;
    s.level_cap = 12;
    return s;
}

Scenario builtin_scenario(const std::string& target) {
    if (target == "example1") return example1_scenario();
    if (target == "three-type-high") return three_type_high_scenario();
    if (target == "three-type-low") return three_type_low_scenario();
    throw ScenarioError("unknown reproduction target '" + target + "' (expected example1, three-type-high or three-type-low)");
}

}  // namespace screenlab
