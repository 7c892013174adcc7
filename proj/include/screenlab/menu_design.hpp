#pragma once

#include "screenlab/beliefs.hpp"
#include "screenlab/model_core.hpp"

#include <string>
#include <vector>

namespace screenlab {

// Sorted, duplicate-free set of contracts. The outside option is always
// available on top of it.
using Menu = std::vector<Contract>;

Menu make_menu(std::vector<Contract> contracts);
std::string menu_label(const Menu& menu);

struct MenuRow {
    int type_index = 0;
    Rational virtual_cost;
    std::vector<int> quantity_set;
    long q = 0;
    long t = 0;
};

struct MenuSolution {
    MarginalBelief belief;
    long gamma = 0;
    std::vector<MenuRow> rows;  // supported types in increasing order
    bool unique = true;
    bool robust = true;
    bool strictly_monotone = true;
    Rational principal_expected_payoff;

    Menu menu() const;
    const MenuRow& row(int type_index) const;
};

// Every maximizer of v(q) - c*q over {0..b}, read off the discrete
// first-order bracket. Requires a strictly concave v.
std::vector<int> optimal_quantities(const ValueFunction& v, const Rational& c);

// Throws std::logic_error if chosen quantities increase along the support,
// which cannot happen for a strictly concave v.
MenuSolution optimal_menu(const MarginalBelief& p, const ValueFunction& v, const TypeGrid& grid);

bool is_robust(const MenuSolution& sol);

// One element of M plus the outside option.
struct Option {
    bool outside = false;
    Contract contract;

    auto operator<=>(const Option&) const = default;
};

std::vector<Option> agent_choice(const Menu& menu, const Rational& theta);
Rational best_agent_payoff(const Menu& menu, const Rational& theta);

enum class TieRule { adversarial, optimistic };

Rational expected_principal_payoff(const Menu& menu, const MarginalBelief& p, const ValueFunction& v,
                                   const TypeGrid& grid, TieRule tie_rule);

struct OracleResult {
    Rational best_payoff;
    std::vector<Menu> maximizers;
    long transfer_bound = 0;
    long contracts_considered = 0;
    long menus_evaluated = 0;
};

inline constexpr double kOracleMenuLimit = 1e8;

// Size of the search space the oracle would face; compared to
// kOracleMenuLimit by brute_force_best_menu.
double oracle_search_size(const MarginalBelief& p, const ValueFunction& v, int max_contracts);

// Exhaustive search over menus of at most max_contracts distinct contracts
// with 0 <= q <= b and 0 <= t <= ceil(theta_max)*b, evaluated under
// adversarial ties. Contracts that every supported type strictly rejects in
// favour of the outside option are skipped, since no type ever selects them.
// Throws std::length_error when the search size exceeds kOracleMenuLimit.
OracleResult brute_force_best_menu(const MarginalBelief& p, const ValueFunction& v, const TypeGrid& grid,
                                   int max_contracts);

// q/gamma plus the quantities of every higher supported type. Throws
// std::logic_error when it disagrees with the utility of the own contract.
Rational information_rent(const MenuSolution& sol, int type_index);

enum class ConstraintStatus { strict, weak, violated };
std::string status_name(ConstraintStatus s);

struct ConstraintCheck {
    std::string kind;  // "PC" or "IC"
    int type_index = 0;
    int other_index = 0;  // IC: the type whose contract is the deviation
    Rational slack;
    ConstraintStatus status = ConstraintStatus::strict;
};

struct ConstraintReport {
    std::vector<ConstraintCheck> checks;

    bool all_hold() const;
    bool all_strict() const;
};

ConstraintReport verify_constraints(const MenuSolution& sol);

}  // namespace screenlab
