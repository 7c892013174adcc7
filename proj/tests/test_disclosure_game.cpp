#include "screenlab/disclosure_game.hpp"
#include "screenlab/reports.hpp"
#include "screenlab/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace screenlab;

namespace {

const LevelSnapshot& at_level(const RationalizabilityState& s, int level) {
    for (const auto& snap : s.history) {
        if (snap.level == level) return snap;
    }
    FAIL("level " << level << " missing from history");
    return s.history.front();
}

std::set<TypeRange> supports(const Engine& e, const RationalizabilityState& s, int level, int message) {
    auto v = e.supports_at(at_level(s, level).principal, message);
    return {v.begin(), v.end()};
}

std::vector<int> allowed(const Engine& e, const RationalizabilityState& s, int level, int tree, int type_index) {
    return at_level(s, level).agent.at(e.lattice(), tree, type_index);
}

Scenario quadratic_scenario(int m, TypeRange theta_p, const Rational& a, long w) {
    Scenario s;
    s.name = "test";
    s.types = make_type_grid(100, m);
    s.quantities = make_quantity_grid(99);
    s.v = make_value_function(QuadraticValue{a, Rational(1, 4)}, 99);
    s.theta_p = theta_p;
    s.weight_denominator = w;
    s.level_cap = 30;
    return s;
}

// Consistency: from level 2 on, every surviving support at a message holds
// the types forced to send it and only types that may still send it.
void check_consistency(const Engine& e, const RationalizabilityState& s) {
    const auto& lat = e.lattice();
    for (size_t k = 1; k < s.history.size(); ++k) {
        const auto& snap = s.history[k];
        if (snap.principal.unconstrained) continue;
        const auto& prev = s.history[k - 1];
        for (size_t i = 0; i < lat.messages.size(); ++i) {
            auto forced = forced_disclosure_types(lat, prev.agent, static_cast<int>(i));
            auto senders = possible_senders(lat, prev.agent, static_cast<int>(i));
            for (const auto& sup : e.supports_at(snap.principal, static_cast<int>(i))) {
                for (int j : forced) CHECK(sup.contains(j));
                if (senders.empty()) continue;
                for (int j = sup.lo; j <= sup.hi; ++j)
                    CHECK(std::find(senders.begin(), senders.end(), j) != senders.end());
            }
        }
    }
}

}  // namespace

TEST_CASE("message lattice") {
    MessageLattice a = enumerate_messages(TypeRange{1, 3}, TypeRange{1, 2});
    CHECK(a.messages == std::vector<TypeRange>{{1, 2}, {1, 3}});
    CHECK(a.theta_p_index() == 0);
    CHECK(a.top_index() == 1);
    MessageLattice b = enumerate_messages(TypeRange{1, 3}, TypeRange{2, 2});
    CHECK(b.messages == std::vector<TypeRange>{{1, 2}, {1, 3}, {2, 2}, {2, 3}});
    CHECK(b.sub_lattice(b.index_of(TypeRange{2, 3})) == std::vector<int>{2, 3});
    CHECK(enumerate_messages(TypeRange{1, 5}, TypeRange{1, 5}).messages.size() == 1);
}

TEST_CASE("scenario validation lists every problem") {
    Scenario s = quadratic_scenario(3, TypeRange{1, 2}, Rational(50), 1);
    s.quantities = make_quantity_grid(5);
    s.v = make_value_function(QuadraticValue{Rational(50), Rational(1, 4)}, 5);
    CHECK_THROWS_AS(validate_scenario(s), ScenarioError);
    Scenario bad_p = quadratic_scenario(3, TypeRange{2, 4}, Rational(50), 1);
    CHECK_THROWS_AS(validate_scenario(bad_p), ScenarioError);
    Scenario bad_w = quadratic_scenario(3, TypeRange{1, 2}, Rational(50), 0);
    CHECK_THROWS_AS(validate_scenario(bad_w), ScenarioError);
    CHECK_NOTHROW(validate_scenario(quadratic_scenario(3, TypeRange{1, 2}, Rational(50), 2)));
}

TEST_CASE("unawareness sides") {
    CHECK(unawareness_side(quadratic_scenario(3, TypeRange{1, 2}, Rational(50), 1)) == UnawarenessSide::high);
    CHECK(unawareness_side(quadratic_scenario(3, TypeRange{2, 3}, Rational(50), 1)) == UnawarenessSide::low);
    CHECK(unawareness_side(quadratic_scenario(3, TypeRange{2, 2}, Rational(50), 1)) == UnawarenessSide::two_sided);
    CHECK(unawareness_side(quadratic_scenario(3, TypeRange{1, 3}, Rational(50), 1)) == UnawarenessSide::none);
}

TEST_CASE("three-type high-cost checkpoints") {
    Engine e(three_type_high_scenario());
    auto s = e.run();
    const auto& lat = e.lattice();
    const int top = lat.top_index(), tp = lat.theta_p_index();

    CHECK(supports(e, s, 2, top) == std::set<TypeRange>{{1, 3}, {2, 3}, {3, 3}});
    CHECK(supports(e, s, 2, tp) == std::set<TypeRange>{{1, 2}});
    // Level 3: the two higher types must disclose; the lowest keeps both.
    CHECK(allowed(e, s, 3, top, 1).size() == 2);
    CHECK(allowed(e, s, 3, top, 2) == std::vector<int>{top});
    CHECK(allowed(e, s, 3, top, 3) == std::vector<int>{top});
    CHECK(supports(e, s, 4, top) == std::set<TypeRange>{{1, 3}, {2, 3}});
    CHECK(allowed(e, s, 4, top, 1).size() == 2);
    CHECK(allowed(e, s, 5, top, 1) == std::vector<int>{top});
    CHECK(supports(e, s, 6, top) == std::set<TypeRange>{{1, 3}});

    REQUIRE(s.converged);
    CHECK(s.fixed_point_level == 6);
    CHECK(s.level <= 8);
    for (int j = 1; j <= 3; ++j) CHECK(s.agent.at(lat, top, j) == std::vector<int>{top});
    check_consistency(e, s);
    for (const auto& v : fixed_point_verdicts(e, s)) CHECK_MESSAGE(v.pass, v.name << ": " << v.detail);

    // Every surviving top menu gives the three types three distinct contracts.
    auto summary = outcome_summary(e, s);
    std::map<int, std::set<Contract>> per_menu;
    for (const auto& r : summary.rows) per_menu[r.menu_id].insert(r.choice.contract);
    REQUIRE_FALSE(per_menu.empty());
    for (const auto& [id, contracts] : per_menu) CHECK(contracts.size() == 3);
}

TEST_CASE("three-type high with W = 1 forces the lowest type early") {
    Scenario sc = three_type_high_scenario();
    sc.weight_denominator = 1;
    Engine e(sc);
    auto s = e.run();
    CHECK(allowed(e, s, 3, e.lattice().top_index(), 1) == std::vector<int>{e.lattice().top_index()});
    REQUIRE(s.converged);
}

TEST_CASE("three-type low-cost checkpoints") {
    Engine e(three_type_low_scenario());
    auto s = e.run();
    const auto& lat = e.lattice();
    const int top = lat.top_index(), tp = lat.theta_p_index();

    CHECK(supports(e, s, 2, top) == std::set<TypeRange>{{1, 1}, {1, 2}, {1, 3}});
    CHECK(supports(e, s, 2, tp) == std::set<TypeRange>{{2, 3}});
    CHECK(allowed(e, s, 3, top, 1).size() == 2);
    CHECK(allowed(e, s, 3, top, 2) == std::vector<int>{tp});
    CHECK(allowed(e, s, 3, top, 3) == std::vector<int>{tp});
    CHECK(supports(e, s, 4, top) == std::set<TypeRange>{{1, 1}});
    CHECK(allowed(e, s, 5, top, 1) == std::vector<int>{tp});

    REQUIRE(s.converged);
    CHECK(s.fixed_point_level == 5);
    for (size_t t = 0; t < lat.messages.size(); ++t) {
        for (int j = lat.messages[t].lo; j <= lat.messages[t].hi; ++j)
            CHECK(s.agent.at(lat, static_cast<int>(t), j) == std::vector<int>{tp});
    }
    check_consistency(e, s);
    for (const auto& v : fixed_point_verdicts(e, s)) CHECK_MESSAGE(v.pass, v.name << ": " << v.detail);

    auto summary = outcome_summary(e, s);
    std::map<int, std::map<int, Contract>> picks;
    for (const auto& r : summary.rows) picks[r.menu_id][r.type_index] = r.choice.contract;
    REQUIRE_FALSE(picks.empty());
    for (const auto& [id, by_type] : picks) {
        CHECK(by_type.at(1) == by_type.at(2));
        CHECK(by_type.at(2) != by_type.at(3));
    }
}

TEST_CASE("example1 fixture at level 3") {
    Example1Report r = example1_report(example1_scenario());
    CHECK(r.known_payoff == Rational(13949, 50));
    CHECK(r.cross_payoff == Rational(6948, 25));
    CHECK(r.theta_p_survives_level3);

    Engine e(example1_scenario());
    auto s = e.initial_state();
    while (s.level < 2) s = e.advance(s);
    // The explicit belief system is the one entry that favours theta_p.
    const auto& pool = e.pool();
    const int top = e.lattice().top_index(), tp = e.lattice().theta_p_index();
    int explicit_entry = -1;
    for (size_t k = 0; k < pool.entries.size(); ++k) {
        if (pool.entries[k].origin == "explicit") explicit_entry = static_cast<int>(k);
    }
    REQUIRE(explicit_entry >= 0);
    CHECK(e.agent_message_payoff(1, tp, explicit_entry) == Rational(13949, 50));
    CHECK(e.agent_message_payoff(1, top, explicit_entry) == Rational(6948, 25));
    AgentDisclosureSet next = e.agent_step(s, nullptr);
    const auto& msgs = next.at(e.lattice(), top, 1);
    CHECK(std::find(msgs.begin(), msgs.end(), tp) != msgs.end());
}

TEST_CASE("without the explicit belief system the lowest type discloses in the example1 fixture") {
    Scenario sc = example1_scenario();
    sc.explicit_families.clear();
    Engine e(sc);
    auto s = e.initial_state();
    while (s.level < 3) s = e.advance(s);
    CHECK(s.agent.at(e.lattice(), e.lattice().top_index(), 1) == std::vector<int>{e.lattice().top_index()});
}

TEST_CASE("full awareness converges at level 2") {
    Engine e(quadratic_scenario(3, TypeRange{1, 3}, Rational(50), 2));
    auto s = e.run();
    REQUIRE(s.converged);
    CHECK(s.fixed_point_level == 2);
    CHECK(e.lattice().messages.size() == 1);
}

TEST_CASE("a single type gets the first-best contract and the round-up rent") {
    Engine e(quadratic_scenario(1, TypeRange{1, 1}, Rational(50), 1));
    auto s = e.run();
    REQUIRE(s.converged);
    auto summary = outcome_summary(e, s);
    REQUIRE(summary.rows.size() == 1);
    CHECK(summary.rows[0].choice.contract == Contract{98, 98});
    CHECK(summary.rows[0].agent_payoff == Rational(49, 50));
}

TEST_CASE("two-sided unawareness runs without a prediction check") {
    Engine e(quadratic_scenario(3, TypeRange{2, 2}, Rational(251, 5), 2));
    auto s = e.run();
    REQUIRE(s.converged);
    auto verdicts = fixed_point_verdicts(e, s);
    CHECK(verdicts.back().name == "two-sided unawareness");
    check_consistency(e, s);
}

TEST_CASE("low-side withholding depends on the grid resolving small weight ratios") {
    // With slope 50 the first-best quantity of type 3 sits 1/4 inside its
    // bracket. Type 2 keeps message {2..3} only if some belief there puts
    // weight below 1/4 on itself relative to type 3. W = 3 cannot express
    // that ratio, so type 2 drops the message early and type 1 exploits the
    // off-path beliefs left behind. W = 5 resolves the ratio.
    Scenario coarse = quadratic_scenario(3, TypeRange{3, 3}, Rational(50), 3);
    Engine ec(coarse);
    auto sc = ec.run();
    REQUIRE(sc.converged);
    CHECK_FALSE(fixed_point_verdicts(ec, sc)[1].pass);

    Scenario fine = quadratic_scenario(3, TypeRange{3, 3}, Rational(50), 5);
    Engine ef(fine);
    auto sf = ef.run();
    REQUIRE(sf.converged);
    for (const auto& v : fixed_point_verdicts(ef, sf)) CHECK_MESSAGE(v.pass, v.name << ": " << v.detail);
}

TEST_CASE("allowed sets only shrink") {
    for (const Scenario& sc : {three_type_high_scenario(), three_type_low_scenario(), example1_scenario()}) {
        Engine e(sc);
        auto s = e.run();
        for (size_t k = 1; k < s.history.size(); ++k) {
            const auto& prev = s.history[k - 1].agent.allowed;
            const auto& cur = s.history[k].agent.allowed;
            for (size_t t = 0; t < prev.size(); ++t) {
                for (size_t j = 0; j < prev[t].size(); ++j) {
                    for (int m : cur[t][j]) CHECK(std::find(prev[t][j].begin(), prev[t][j].end(), m) != prev[t][j].end());
                }
            }
            if (!s.history[k - 1].principal.unconstrained) {
                for (int x : s.history[k].principal.alive)
                    CHECK(std::binary_search(s.history[k - 1].principal.alive.begin(),
                                             s.history[k - 1].principal.alive.end(), x));
            }
        }
    }
}

TEST_CASE("level cap without convergence") {
    Scenario sc = three_type_high_scenario();
    sc.level_cap = 4;
    auto s = run_rationalizability(sc);
    CHECK_FALSE(s.converged);
    CHECK(s.fixed_point_level == -1);
    Engine e(sc);
    CHECK_FALSE(fixed_point_verdicts(e, s).front().pass);
}
