#include "screenlab/beliefs.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace screenlab;

namespace {

MarginalBelief example_known() {
    return make_belief(TypeRange{1, 4}, {Rational(1, 20), Rational(3, 20), Rational(3, 10), Rational(1, 2)});
}

MarginalBelief example_full() {
    return make_belief(TypeRange{1, 5}, {Rational(0), Rational(0), Rational(0), Rational(89, 91), Rational(2, 91)});
}

}  // namespace

TEST_CASE("type ranges") {
    TypeRange r{2, 4};
    CHECK(r.size() == 3);
    CHECK(r.label() == "{2..4}");
    CHECK(TypeRange{3, 3}.label() == "{3}");
    CHECK(r.contains(TypeRange{3, 4}));
    CHECK_FALSE(r.contains(TypeRange{1, 2}));
    CHECK(intersect(r, TypeRange{4, 6}) == TypeRange{4, 4});
    CHECK(intersect(r, TypeRange{5, 6}).empty());
}

TEST_CASE("belief construction") {
    CHECK_THROWS_AS(make_belief(TypeRange{1, 2}, {Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(make_belief(TypeRange{1, 2}, {Rational(3, 2), Rational(-1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(make_belief(TypeRange{1, 2}, {Rational(1)}), std::invalid_argument);
    MarginalBelief p = belief_from_weights(TypeRange{1, 3}, {Rational(1), Rational(3), Rational(0)});
    CHECK(p.p(2) == Rational(3, 4));
    CHECK(p.support() == std::vector<int>{1, 2});
    CHECK(p.support_hull() == TypeRange{1, 2});
    MarginalBelief full = example_full();
    CHECK(full.support_hull() == TypeRange{4, 5});
    CHECK_FALSE(full.supported(3));
}

TEST_CASE("log-concavity") {
    CHECK(is_log_concave(example_known()));
    CHECK(is_log_concave(example_full()));
    CHECK(is_log_concave(belief_from_weights(TypeRange{1, 3}, {Rational(1), Rational(3), Rational(1)})));
    CHECK_FALSE(is_log_concave(belief_from_weights(TypeRange{1, 3}, {Rational(3), Rational(1), Rational(3)})));
    // A gap inside the support breaks contiguity.
    CHECK_FALSE(is_log_concave(belief_from_weights(TypeRange{1, 3}, {Rational(1), Rational(0), Rational(1)})));
}

TEST_CASE("virtual costs of the example beliefs") {
    MarginalBelief p = example_known();
    CHECK(virtual_cost(p, 1) == 1);
    CHECK(virtual_cost(p, 2) == Rational(7, 3));
    CHECK(virtual_cost(p, 3) == Rational(11, 3));
    CHECK(virtual_cost(p, 4) == 5);
    MarginalBelief f = example_full();
    CHECK(virtual_cost(f, 4) == 4);
    CHECK(virtual_cost(f, 5) == Rational(99, 2));
    CHECK_THROWS(virtual_cost(f, 1));
}

TEST_CASE("conditioning") {
    MarginalBelief p = example_known();
    MarginalBelief c = condition(p, TypeRange{2, 4});
    CHECK(c.message == TypeRange{2, 4});
    CHECK(c.p(2) == Rational(3, 19));
    CHECK(c.p(3) == Rational(6, 19));
    CHECK(c.p(4) == Rational(10, 19));
    CHECK(check_reverse_bayes(p, c));
    CHECK(is_log_concave(c));
    CHECK(hazard_sum_identity_check(p, c));
    CHECK_THROWS(condition(example_full(), TypeRange{1, 3}));
    CHECK_THROWS(condition(p, TypeRange{2, 5}));
}

TEST_CASE("reverse Bayesianism and the hazard-sum identity") {
    MarginalBelief big = belief_from_weights(TypeRange{1, 3}, {Rational(1), Rational(2), Rational(2)});
    MarginalBelief good = make_belief(TypeRange{2, 3}, {Rational(1, 2), Rational(1, 2)});
    MarginalBelief bad = make_belief(TypeRange{2, 3}, {Rational(1, 3), Rational(2, 3)});
    CHECK(check_reverse_bayes(big, good));
    CHECK_FALSE(check_reverse_bayes(big, bad));
    CHECK(hazard_sum_identity_check(big, good));
    CHECK_THROWS_AS(hazard_sum_identity_check(big, bad), std::invalid_argument);
    MarginalBelief point_a = make_belief(TypeRange{1, 3}, {Rational(0), Rational(1), Rational(0)});
    MarginalBelief point_b = make_belief(TypeRange{2, 3}, {Rational(1), Rational(0)});
    CHECK(hazard_sum_identity_check(point_a, point_b));
}

TEST_CASE("wariness") {
    TypeRange theta_p{1, 4};
    CHECK(check_wariness(example_known(), theta_p));
    // Type 5 lies outside theta_p, so the message's new end must be supported.
    CHECK(check_wariness(example_full(), theta_p));
    MarginalBelief no_top = make_belief(TypeRange{1, 5}, {Rational(1, 2), Rational(1, 2), Rational(0), Rational(0), Rational(0)});
    CHECK_FALSE(check_wariness(no_top, theta_p));
}

TEST_CASE("monotone supports for a pair") {
    CHECK(monotone_supports_pair(TypeRange{1, 2}, TypeRange{1, 2}, TypeRange{1, 3}, TypeRange{2, 3}));
    CHECK(monotone_supports_pair(TypeRange{1, 2}, TypeRange{1, 2}, TypeRange{1, 3}, TypeRange{3, 3}));
    CHECK_FALSE(monotone_supports_pair(TypeRange{1, 2}, TypeRange{2, 2}, TypeRange{1, 3}, TypeRange{1, 2}));
}

TEST_CASE("rank map") {
    RankMap r = make_rank_map(TypeRange{2, 4}, TypeRange{1, 5});
    CHECK(r.j == std::vector<int>{2, 3, 4});
    CHECK(make_rank_map(TypeRange{1, 5}, TypeRange{1, 5}).j == std::vector<int>{1, 2, 3, 4, 5});
    CHECK_THROWS(make_rank_map(TypeRange{1, 6}, TypeRange{1, 5}));
}

TEST_CASE("log-concave weight profiles") {
    auto two = log_concave_weight_profiles(2, 2);
    CHECK(two.size() == 3);
    CHECK(log_concave_weight_profiles(4, 1).size() == 1);
    for (const auto& w : log_concave_weight_profiles(4, 3)) {
        for (size_t i = 1; i + 1 < w.size(); ++i) CHECK(w[i] * w[i] >= w[i - 1] * w[i + 1]);
    }
    CHECK_THROWS(log_concave_weight_profiles(0, 2));
}

TEST_CASE("belief family enumeration") {
    std::vector<TypeRange> messages{TypeRange{1, 2}, TypeRange{1, 3}};
    TypeRange theta_p{1, 2};
    auto w1 = enumerate_belief_families(messages, {{1, 2}, {1, 2, 3}}, theta_p, 1);
    REQUIRE(w1.size() == 1);
    CHECK(w1[0].members[1].p(1) == Rational(1, 3));

    auto w2 = enumerate_belief_families(messages, {{1, 2}, {1, 2, 3}}, theta_p, 2);
    bool uniform_found = false;
    for (const auto& fam : w2) {
        std::string why;
        CHECK(check_family(fam, theta_p, &why));
        if (fam.members[1].p(1) == Rational(1, 3) && fam.members[1].p(3) == Rational(1, 3)) uniform_found = true;
    }
    CHECK(uniform_found);

    // Disjoint supports form separate components with free weights.
    auto split = enumerate_belief_families(messages, {{1, 2}, {3}}, theta_p, 2);
    CHECK(split.size() == 3);

    CHECK_THROWS_AS(enumerate_belief_families(messages, {{1, 2}, {1, 3}}, theta_p, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_belief_families(messages, {{1, 2}, {1, 2}}, theta_p, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_belief_families(messages, {{2}, {1, 2, 3}}, theta_p, 1), std::invalid_argument);
}
