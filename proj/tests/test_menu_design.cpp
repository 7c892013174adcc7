#include "screenlab/menu_design.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace screenlab;

namespace {

ValueFunction example_v() { return make_value_function(QuadraticValue{Rational(50), Rational(1, 4)}, 99); }

MarginalBelief example_known() {
    return make_belief(TypeRange{1, 4}, {Rational(1, 20), Rational(3, 20), Rational(3, 10), Rational(1, 2)});
}

std::vector<long> quantities(const MenuSolution& sol) {
    std::vector<long> q;
    for (const auto& r : sol.rows) q.push_back(r.q);
    return q;
}

}  // namespace

TEST_CASE("optimal quantities from the discrete first-order bracket") {
    ValueFunction v = example_v();
    CHECK(optimal_quantities(v, Rational(1)) == std::vector<int>{98});
    CHECK(optimal_quantities(v, Rational(7, 3)) == std::vector<int>{95});
    CHECK(optimal_quantities(v, Rational(11, 4)) == std::vector<int>{94, 95});
    CHECK(optimal_quantities(v, Rational(0)) == std::vector<int>{99});
    CHECK(optimal_quantities(v, Rational(60)) == std::vector<int>{0});
}

TEST_CASE("example menu on the known types") {
    TypeGrid grid = make_type_grid(100, 5);
    MenuSolution sol = optimal_menu(example_known(), example_v(), grid);
    CHECK(quantities(sol) == std::vector<long>{98, 95, 93, 90});
    CHECK(sol.row(1).t == 376);
    CHECK(sol.row(2).t == 373);
    CHECK(sol.row(3).t == 369);
    CHECK(sol.row(4).t == 360);
    CHECK(sol.unique);
    CHECK(sol.robust);
    CHECK(sol.strictly_monotone);
    CHECK(sol.principal_expected_payoff == Rational(169391, 80));
    CHECK(agent_utility(Contract{98, 376}, grid.theta(1)) == Rational(13949, 50));
    CHECK(information_rent(sol, 1) == Rational(13949, 50));
    CHECK(information_rent(sol, 4) == Rational(9, 10));
    ConstraintReport report = verify_constraints(sol);
    CHECK(report.all_hold());
    CHECK(report.all_strict());
}

TEST_CASE("example menu after full awareness and the cross pick") {
    TypeGrid grid = make_type_grid(100, 5);
    MarginalBelief full =
        make_belief(TypeRange{1, 5}, {Rational(0), Rational(0), Rational(0), Rational(89, 91), Rational(2, 91)});
    MenuSolution sol = optimal_menu(full, example_v(), grid);
    CHECK(quantities(sol) == std::vector<long>{92, 1});
    CHECK(sol.row(4).t == 369);
    CHECK(sol.row(5).t == 5);
    CHECK(best_agent_payoff(sol.menu(), grid.theta(1)) == Rational(6948, 25));
    auto pick = agent_choice(sol.menu(), grid.theta(1));
    REQUIRE(pick.size() == 1);
    CHECK(pick.front().contract == Contract{92, 369});
}

TEST_CASE("a virtual cost equal to a marginal value breaks uniqueness") {
    MarginalBelief p = make_belief(TypeRange{1, 2}, {Rational(3, 7), Rational(4, 7)});
    MenuSolution sol = optimal_menu(p, example_v(), make_type_grid(100, 2));
    CHECK(sol.row(2).virtual_cost == Rational(11, 4));
    CHECK(sol.row(2).quantity_set == std::vector<int>{94, 95});
    CHECK(sol.row(2).q == 95);
    CHECK_FALSE(sol.unique);
    CHECK_FALSE(sol.robust);
    CHECK_FALSE(is_robust(sol));
}

TEST_CASE("agent choice includes the outside option on ties") {
    Menu menu = make_menu({Contract{10, 10}, Contract{5, 8}});
    Rational theta(99, 100);
    auto pick = agent_choice(menu, theta);
    REQUIRE(pick.size() == 1);
    CHECK(pick.front().contract == Contract{5, 8});
    auto indifferent = agent_choice(make_menu({Contract{0, 0}}), theta);
    CHECK(indifferent.size() == 2);
    auto reject = agent_choice(make_menu({Contract{10, 1}}), theta);
    REQUIRE(reject.size() == 1);
    CHECK(reject.front().outside);
    CHECK(menu_label(menu) == "{(5,8),(10,10)}");
}

TEST_CASE("tie rules agree on the grid") {
    // Utilities t - (j - 1/gamma) q never tie across distinct contracts with
    // q < gamma, so both tie rules give the same payoff.
    TypeGrid grid = make_type_grid(100, 5);
    MenuSolution sol = optimal_menu(example_known(), example_v(), grid);
    Rational adv = expected_principal_payoff(sol.menu(), example_known(), example_v(), grid, TieRule::adversarial);
    Rational opt = expected_principal_payoff(sol.menu(), example_known(), example_v(), grid, TieRule::optimistic);
    CHECK(adv == opt);
    CHECK(adv == sol.principal_expected_payoff);
}

TEST_CASE("oracle on the two-type fixture") {
    ValueFunction v = make_value_function(QuadraticValue{Rational(53, 10), Rational(1, 4)}, 8);
    TypeGrid grid = make_type_grid(10, 2);
    MarginalBelief p = make_belief(TypeRange{1, 2}, {Rational(1, 2), Rational(1, 2)});
    MenuSolution sol = optimal_menu(p, v, grid);
    CHECK(sol.menu() == make_menu({Contract{5, 10}, Contract{8, 13}}));
    OracleResult res = brute_force_best_menu(p, v, grid, 2);
    CHECK(res.best_payoff == Rational(473, 40));
    CHECK(res.transfer_bound == 16);
    REQUIRE(res.maximizers.size() == 1);
    CHECK(res.maximizers.front() == sol.menu());
    CHECK(expected_principal_payoff(sol.menu(), p, v, grid, TieRule::adversarial) == res.best_payoff);
}

TEST_CASE("oracle with a point mass returns the first-best payoff") {
    ValueFunction v = make_value_function(QuadraticValue{Rational(53, 10), Rational(1, 4)}, 8);
    TypeGrid grid = make_type_grid(10, 3);
    MarginalBelief p = make_belief(TypeRange{1, 3}, {Rational(0), Rational(1), Rational(0)});
    MenuSolution sol = optimal_menu(p, v, grid);
    CHECK(sol.row(2).q == 7);
    CHECK(sol.row(2).t == 14);
    CHECK(sol.principal_expected_payoff == Rational(217, 20));
    CHECK(brute_force_best_menu(p, v, grid, 1).best_payoff == Rational(217, 20));
}

TEST_CASE("oracle refuses oversized searches") {
    TypeGrid grid = make_type_grid(100, 5);
    CHECK(oracle_search_size(example_known(), example_v(), 4) > kOracleMenuLimit);
    CHECK_THROWS_AS(brute_force_best_menu(example_known(), example_v(), grid, 4), std::length_error);
}
