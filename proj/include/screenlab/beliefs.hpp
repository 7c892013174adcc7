#pragma once

#include "screenlab/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace screenlab {

// Inclusive range of 1-based type indices. Messages, Theta_P and supports
// are all contiguous and use this representation.
struct TypeRange {
    int lo = 1;
    int hi = 0;

    bool empty() const { return hi < lo; }
    int size() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(int j) const { return lo <= j && j <= hi; }
    bool contains(const TypeRange& other) const { return other.empty() || (lo <= other.lo && other.hi <= hi); }
    bool overlaps(const TypeRange& other) const {
        return !empty() && !other.empty() && lo <= other.hi && other.lo <= hi;
    }
    std::string label() const;

    auto operator<=>(const TypeRange&) const = default;
};

TypeRange intersect(const TypeRange& a, const TypeRange& b);

struct MarginalBelief {
    TypeRange message;
    std::vector<Rational> probs;  // probs[k] belongs to type message.lo + k

    const Rational& p(int j) const;
    bool supported(int j) const;
    std::vector<int> support() const;
    // Smallest range containing every supported type.
    TypeRange support_hull() const;
    std::string key() const;
};

// Validates nonnegativity, exact unit mass and length. Throws
// std::invalid_argument.
MarginalBelief make_belief(const TypeRange& message, std::vector<Rational> probs);
// Normalizes nonnegative weights over the message.
MarginalBelief belief_from_weights(const TypeRange& message, const std::vector<Rational>& weights);

bool is_log_concave(const MarginalBelief& p);

// ceil(theta_j) + P(supported types below j) / p(j). Throws if p(j) == 0.
Rational virtual_cost(const MarginalBelief& p, int j);

MarginalBelief condition(const MarginalBelief& p_big, const TypeRange& theta_set);

bool check_reverse_bayes(const MarginalBelief& a, const MarginalBelief& b);
bool check_wariness(const MarginalBelief& p, const TypeRange& theta_p);

// Monotone supports for a single ordered pair: applies when
// min(a.message) <= min(b.message) and max(a.message) <= max(b.message).
bool monotone_supports_pair(const TypeRange& message_a, const TypeRange& support_a, const TypeRange& message_b,
                            const TypeRange& support_b);

struct WeightComponent {
    TypeRange types;
    std::vector<long> weights;
};

struct BeliefFamily {
    std::vector<MarginalBelief> members;  // one per message, in lattice order
    std::vector<WeightComponent> generator;

    std::string key() const;
};

bool check_monotone_supports(const BeliefFamily& fam);
bool check_family(const BeliefFamily& fam, const TypeRange& theta_p, std::string* reason = nullptr);

// Partial-sum ratios over common-support tails agree. Throws
// std::invalid_argument if the pair violates reverse Bayesianism.
bool hazard_sum_identity_check(const MarginalBelief& p_big, const MarginalBelief& p_small);

// Position of each message type, in descending order, within the descending
// order of theta_bar. Entry i-1 holds j(i).
struct RankMap {
    std::vector<int> j;
};

RankMap make_rank_map(const TypeRange& message, const TypeRange& theta_bar);

// Support assignments are per message, lists of type indices. Throws
// std::invalid_argument naming the reason when an assignment has a gap,
// falls outside its message, or violates wariness or monotone supports.
std::vector<BeliefFamily> enumerate_belief_families(const std::vector<TypeRange>& messages,
                                                    const std::vector<std::vector<int>>& supports,
                                                    const TypeRange& theta_p, long weight_denominator);

// All log-concave vectors in {1..W}^n whose entries have gcd 1.
std::vector<std::vector<long>> log_concave_weight_profiles(int n, long weight_denominator);

}  // namespace screenlab
