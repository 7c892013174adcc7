#include "screenlab/scenario.hpp"
#include "screenlab/tables.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace screenlab;
using nlohmann::json;

namespace {

json minimal_scenario() {
    return json{{"name", "io"},
                {"gamma", 100},
                {"m", 3},
                {"b", 99},
                {"value_function", {{"quadratic", {{"a", "50.2"}, {"c", "1/4"}}}}},
                {"theta_p", {{"min_index", 2}, {"max_index", 3}}},
                {"weight_denominator", 3},
                {"level_cap", 12}};
}

}  // namespace

TEST_CASE("scenario JSON round trip") {
    for (const std::string target : {"example1", "three-type-high", "three-type-low"}) {
        Scenario a = builtin_scenario(target);
        Scenario b = scenario_from_json(scenario_to_json(a));
        CHECK(b.name == a.name);
        CHECK(b.types.gamma == a.types.gamma);
        CHECK(b.types.m == a.types.m);
        CHECK(b.v.values == a.v.values);
        CHECK(b.theta_p == a.theta_p);
        CHECK(b.weight_denominator == a.weight_denominator);
        CHECK(b.level_cap == a.level_cap);
        CHECK(b.belief.has_value() == a.belief.has_value());
        if (a.belief) CHECK(b.belief->probs == a.belief->probs);
        REQUIRE(b.explicit_families.size() == a.explicit_families.size());
        for (size_t f = 0; f < a.explicit_families.size(); ++f) {
            REQUIRE(b.explicit_families[f].members.size() == a.explicit_families[f].members.size());
            for (size_t k = 0; k < a.explicit_families[f].members.size(); ++k)
                CHECK(b.explicit_families[f].members[k].probs == a.explicit_families[f].members[k].probs);
        }
    }
}

TEST_CASE("scenario fields parse exactly") {
    Scenario s = scenario_from_json(minimal_scenario());
    CHECK(s.v(1) - s.v(0) == Rational(999, 20));
    CHECK(s.v(2) == Rational(497, 5));
    CHECK(s.theta_p == TypeRange{2, 3});
    CHECK(s.weight_denominator == 3);
    CHECK(s.level_cap == 12);
    CHECK_FALSE(s.belief.has_value());

    json j = minimal_scenario();
    j["belief"] = {{"probs", {{"2", "0.25"}, {"3", "0.75"}}}};
    Scenario t = scenario_from_json(j);
    REQUIRE(t.belief.has_value());
    CHECK(t.belief->message == TypeRange{2, 3});
    CHECK(t.belief->p(2) == Rational(1, 4));
}

TEST_CASE("malformed scenarios raise ScenarioError") {
    CHECK_THROWS_AS(scenario_from_json(json::array()), ScenarioError);
    auto without = [](const std::string& key) {
        json j = minimal_scenario();
        j.erase(key);
        return j;
    };
    CHECK_THROWS_AS(scenario_from_json(without("gamma")), ScenarioError);
    CHECK_THROWS_AS(scenario_from_json(without("value_function")), ScenarioError);

    json j = minimal_scenario();
    j["m"] = "three";
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);

    j = minimal_scenario();
    j["value_function"] = {{"quadratic", {{"a", "fifty"}, {"c", "1/4"}}}};
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);

    j = minimal_scenario();
    j["value_function"] = {{"table", {"0", "1"}}};
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);

    j = minimal_scenario();
    j["belief"] = {{"probs", {{"2", "1/2"}, {"3", "1/3"}}}};
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);

    j = minimal_scenario();
    j["belief"] = {{"probs", {{"1", "1/2"}, {"3", "1/2"}}}};
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);

    j = minimal_scenario();
    j["theta_p"] = {{"min_index", 2}};
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);
}

TEST_CASE("scenario files") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
    const std::string path = "screenlab_io_test.json";
    {
        std::ofstream out(path);
        out << "{ \"gamma\": 100, ";
    }
    CHECK_THROWS_AS(load_scenario(path), ScenarioError);
    {
        std::ofstream out(path);
        out << minimal_scenario().dump(2);
    }
    CHECK(load_scenario(path).theta_p == TypeRange{2, 3});
    std::remove(path.c_str());
}

TEST_CASE("unknown reproduction target") {
    CHECK_THROWS_AS(builtin_scenario("example2"), ScenarioError);
}

TEST_CASE("CSV output") {
    Table t{{"name", "value"}, {{"plain", "1/2"}, {"a,b", "say \"hi\""}, {"two\nlines", ""}}};
    std::string csv = to_csv(t, {"seed=7", "W=3"});
    CHECK(csv ==
          "# seed=7\n# W=3\n"
          "name,value\n"
          "plain,1/2\n"
          "\"a,b\",\"say \"\"hi\"\"\"\n"
          "\"two\nlines\",\n");
    CHECK(to_csv(Table{{"x"}, {}}, {}) == "x\n");
}

TEST_CASE("text tables align columns by code point") {
    Table t{{"type", "θ"}, {{"1", "0.99"}, {"12", "θ₁"}}};
    std::string text = to_text(t, "Menu", {"seed=1"});
    CHECK(text ==
          "Menu\nseed=1\n\n"
          "type  θ\n"
          "----  ----\n"
          "1     0.99\n"
          "12    θ₁\n");
}

TEST_CASE("rational cells") {
    std::vector<std::string> headers, row;
    push_rational_headers(headers, "rent");
    push_rational(row, Rational(7, 4));
    push_rational(row, Rational(1, 3));
    CHECK(headers == std::vector<std::string>{"rent", "rent_decimal"});
    CHECK(row[0] == "7/4");
    CHECK(row[1] == "1.75");
    CHECK(row[2] == "1/3");
    CHECK(row[3].rfind("~0.333", 0) == 0);
}
