#pragma once

#include "screenlab/disclosure_game.hpp"

#include <string>
#include <vector>

namespace screenlab {

// Reference numbers for the example1 fixture: the known-types menu, the cross pick of the lowest type
// from the full-awareness menu, and whether message theta_p survives the
// level-3 agent step for that type in the top tree.
struct Example1Report {
    MenuSolution known;
    MenuSolution full;
    Rational known_payoff;  // lowest type, own contract in the known menu
    Rational cross_payoff;  // lowest type, best pick from the full menu
    bool theta_p_survives_level3 = false;
    std::vector<std::string> level3_messages;  // allowed to the lowest type in the top tree
};

// Needs the scenario belief on theta_p and one explicit family whose top
// member is the full-awareness belief.
Example1Report example1_report(const Scenario& s);

struct OracleComparison {
    std::string label;
    MenuSolution solution;
    Menu tested;  // FOC menu, possibly perturbed
    Rational foc_payoff;
    Rational oracle_payoff;
    bool match = false;
    bool in_maximizers = false;
    long menus_evaluated = 0;
    long transfer_bound = 0;
};

// Evaluates the FOC menu under adversarial ties and compares it with the
// exhaustive optimum over menus with at most one contract per supported type.
// With perturb set, the transfer of the highest-quantity contract drops by
// one before the comparison, which must then report a mismatch.
OracleComparison oracle_compare(const std::string& label, const MarginalBelief& p, const ValueFunction& v,
                                const TypeGrid& grid, bool perturb = false);

}  // namespace screenlab
