#pragma once

#include "screenlab/disclosure_game.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace screenlab {

struct SuiteResult {
    std::string name;
    bool pass = true;
    long cases = 0;
    long violations = 0;
    std::string detail;  // first violation, or a short count summary
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Random instance generators shared by the suites and the CLI.
ValueFunction random_oracle_value_function(std::mt19937_64& rng, int b);
// Log-concave weights in {1..4}; half of the draws support every type.
MarginalBelief random_oracle_belief(std::mt19937_64& rng, int m);
// m cycles through 3, 4, 5 with the index. High side: theta_p = {1..k} and
// W cycles through 1, 2, 3. Low side: theta_p = {k..m}, W alternates 3 and 4,
// and the slope is drawn from values the W = 3 grid resolves.
Scenario random_one_sided_scenario(std::mt19937_64& rng, int index, bool high_side);

SuiteResult high_disclosure_suite(std::uint64_t seed, int cases = 24);
SuiteResult low_withholding_suite(std::uint64_t seed, int cases = 24);
SuiteResult oracle_suite(std::uint64_t seed, int cases = 50);
SuiteResult conditioning_suite(std::uint64_t seed, int cases = 100);
SuiteResult cross_awareness_suite(std::uint64_t seed, int cases = 100);
SuiteResult foc_argmax_suite(std::uint64_t seed, int cases = 1000);
SuiteResult value_function_suite();

std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace screenlab
