#include "screenlab/menu_design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace screenlab {

Menu make_menu(std::vector<Contract> contracts) {
    std::sort(contracts.begin(), contracts.end());
    contracts.erase(std::unique(contracts.begin(), contracts.end()), contracts.end());
    return contracts;
}

std::string menu_label(const Menu& menu) {
    std::string s = "{";
    for (size_t i = 0; i < menu.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(menu[i].q) + "," + std::to_string(menu[i].t) + ")";
    }
    return s + "}";
}

Menu MenuSolution::menu() const {
    std::vector<Contract> cs;
    for (const auto& r : rows) cs.push_back(Contract{r.q, r.t});
    return make_menu(std::move(cs));
}

const MenuRow& MenuSolution::row(int type_index) const {
    for (const auto& r : rows) {
        if (r.type_index == type_index) return r;
    }
    throw std::out_of_range("type " + std::to_string(type_index) + " is not supported by this menu");
}

std::vector<int> optimal_quantities(const ValueFunction& v, const Rational& c) {
    const int b = v.b();
    // First q whose forward difference drops to c or below.
    int lo = 0;
    int hi = b;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (forward_diff(v, mid) <= c) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    int q = lo;
    if (q < b && forward_diff(v, q) == c) return {q, q + 1};
    return {q};
}

MenuSolution optimal_menu(const MarginalBelief& p, const ValueFunction& v, const TypeGrid& grid) {
    auto support = p.support();
    if (support.empty()) throw std::invalid_argument("optimal menu needs a nonempty support");
    MenuSolution sol;
    sol.belief = p;
    sol.gamma = grid.gamma;
    for (int j : support) {
        MenuRow row;
        row.type_index = j;
        row.virtual_cost = virtual_cost(p, j);
        row.quantity_set = optimal_quantities(v, row.virtual_cost);
        row.q = row.quantity_set.back();
        if (row.quantity_set.size() != 1) sol.unique = false;
        sol.rows.push_back(std::move(row));
    }
    for (size_t i = 0; i + 1 < sol.rows.size(); ++i) {
        if (sol.rows[i + 1].q > sol.rows[i].q)
            throw std::logic_error("optimal quantities increase from type " + std::to_string(sol.rows[i].type_index) +
                                   " to type " + std::to_string(sol.rows[i + 1].type_index) +
                                   "; the value function is not concave");
        if (sol.rows[i + 1].q == sol.rows[i].q) sol.strictly_monotone = false;
    }
    for (size_t k = sol.rows.size(); k-- > 0;) {
        auto& row = sol.rows[k];
        const Rational& theta = grid.theta(row.type_index);
        if (k + 1 == sol.rows.size()) {
            row.t = ceil_times_int(theta, row.q);
        } else {
            const auto& next = sol.rows[k + 1];
            row.t = next.t + ceil_times_int(theta, row.q - next.q);
        }
    }
    sol.robust = sol.unique;
    sol.principal_expected_payoff = 0;
    for (const auto& row : sol.rows) {
        sol.principal_expected_payoff += p.p(row.type_index) * principal_utility(Contract{row.q, row.t}, v);
    }
    return sol;
}

bool is_robust(const MenuSolution& sol) {
    for (const auto& r : sol.rows) {
        if (r.quantity_set.size() != 1) return false;
    }
    return true;
}

std::vector<Option> agent_choice(const Menu& menu, const Rational& theta) {
    Rational best = 0;
    for (const auto& c : menu) {
        Rational u = agent_utility(c, theta);
        if (u > best) best = u;
    }
    std::vector<Option> out;
    if (best == 0) out.push_back(Option{true, kOutsideOption});
    for (const auto& c : menu) {
        if (agent_utility(c, theta) == best) out.push_back(Option{false, c});
    }
    return out;
}

Rational best_agent_payoff(const Menu& menu, const Rational& theta) {
    Rational best = 0;
    for (const auto& c : menu) {
        Rational u = agent_utility(c, theta);
        if (u > best) best = u;
    }
    return best;
}

Rational expected_principal_payoff(const Menu& menu, const MarginalBelief& p, const ValueFunction& v,
                                   const TypeGrid& grid, TieRule tie_rule) {
    Rational total = 0;
    for (int j : p.support()) {
        auto choices = agent_choice(menu, grid.theta(j));
        Rational pick;
        bool first = true;
        for (const auto& o : choices) {
            Rational u = o.outside ? Rational(0) : principal_utility(o.contract, v);
            if (first || (tie_rule == TieRule::adversarial ? u < pick : u > pick)) pick = u;
            first = false;
        }
        total += p.p(j) * pick;
    }
    return total;
}

namespace {

long transfer_bound(const MarginalBelief& p, const ValueFunction& v) {
    auto s = p.support();
    if (s.empty()) throw std::invalid_argument("oracle needs a nonempty support");
    return static_cast<long>(s.back()) * v.b();
}

Integer lcm_of_denominators(const std::vector<Rational>& xs) {
    Integer l = 1;
    for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

}  // namespace

double oracle_search_size(const MarginalBelief& p, const ValueFunction& v, int max_contracts) {
    double grid = static_cast<double>(v.b() + 1) * static_cast<double>(transfer_bound(p, v) + 1);
    return std::pow(grid, max_contracts);
}

OracleResult brute_force_best_menu(const MarginalBelief& p, const ValueFunction& v, const TypeGrid& grid,
                                   int max_contracts) {
    if (max_contracts < 1) throw std::invalid_argument("oracle needs max_contracts >= 1");
    double size = oracle_search_size(p, v, max_contracts);
    if (size > kOracleMenuLimit)
        throw std::length_error("oracle search size " + std::to_string(static_cast<long long>(size)) +
                                " exceeds the limit of 1e8 menus; reduce b or the number of contracts");
    const auto support = p.support();
    const long T = transfer_bound(p, v);
    const long gamma = grid.gamma;
    const int b = v.b();

    // Payoffs are scaled to integers: agent utilities by gamma, principal
    // utilities by the lcm of the value-table denominators, probabilities by
    // the lcm of their denominators.
    Integer v_scale = lcm_of_denominators(v.values);
    std::vector<Rational> probs;
    for (int j : support) probs.push_back(p.p(j));
    Integer p_scale = lcm_of_denominators(probs);
    std::vector<long> weight;
    for (const auto& x : probs) weight.push_back(to_long(Integer(x * Rational(p_scale))));

    struct Cand {
        Contract c;
        std::vector<long> ua;
        long up;
    };
    std::vector<Cand> cands;
    const Rational& theta_low = grid.theta(support.front());
    for (int q = 0; q <= b; ++q) {
        for (long t = 0; t <= T; ++t) {
            if (Rational(t) < theta_low * q) continue;
            Cand cd;
            cd.c = Contract{q, t};
            for (int j : support) cd.ua.push_back(t * gamma - (static_cast<long>(j) * gamma - 1) * q);
            cd.up = to_long(Integer((v(q) - Rational(t)) * Rational(v_scale)));
            cands.push_back(std::move(cd));
        }
    }

    OracleResult res;
    res.transfer_bound = T;
    res.contracts_considered = static_cast<long>(cands.size());
    __int128 best = 0;
    bool have_best = false;
    std::vector<std::vector<size_t>> best_sets;
    std::vector<size_t> pick;
    const size_t ns = support.size();

    auto evaluate = [&]() {
        __int128 total = 0;
        for (size_t s = 0; s < ns; ++s) {
            long best_u = 0;
            long worst_up = 0;  // outside option
            for (size_t idx : pick) {
                const auto& cd = cands[idx];
                long u = cd.ua[s];
                if (u > best_u) {
                    best_u = u;
                    worst_up = cd.up;
                } else if (u == best_u) {
                    worst_up = std::min(worst_up, cd.up);
                }
            }
            total += static_cast<__int128>(weight[s]) * worst_up;
        }
        ++res.menus_evaluated;
        if (!have_best || total > best) {
            best = total;
            have_best = true;
            best_sets.clear();
        }
        if (total == best) best_sets.push_back(pick);
    };

    std::function<void(size_t)> rec = [&](size_t start) {
        if (!pick.empty()) evaluate();
        if (static_cast<int>(pick.size()) == max_contracts) return;
        for (size_t i = start; i < cands.size(); ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);

    Integer best_int;
    {
        // __int128 to mpz via two 64-bit halves.
        bool neg = best < 0;
        unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-best) : static_cast<unsigned __int128>(best);
        Integer hi_part = static_cast<unsigned long>(mag >> 64);
        Integer lo_part = static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL);
        best_int = hi_part * Integer("18446744073709551616") + lo_part;
        if (neg) best_int = -best_int;
    }
    res.best_payoff = Rational(best_int, v_scale * p_scale);
    res.best_payoff.canonicalize();
    for (const auto& set : best_sets) {
        std::vector<Contract> cs;
        for (size_t idx : set) cs.push_back(cands[idx].c);
        res.maximizers.push_back(make_menu(std::move(cs)));
    }
    std::sort(res.maximizers.begin(), res.maximizers.end());
    return res;
}

Rational information_rent(const MenuSolution& sol, int type_index) {
    const MenuRow& own = sol.row(type_index);
    Rational rent = ratio(own.q, sol.gamma);
    for (const auto& r : sol.rows) {
        if (r.type_index > type_index) rent += r.q;
    }
    rent.canonicalize();
    Rational theta = Rational(type_index) - Rational(1, sol.gamma);
    Rational direct = agent_utility(Contract{own.q, own.t}, theta);
    if (direct != rent)
        throw std::logic_error("information rent " + to_fraction(rent) + " disagrees with utility " + to_fraction(direct) +
                               " for type " + std::to_string(type_index));
    return rent;
}

std::string status_name(ConstraintStatus s) {
    switch (s) {
        case ConstraintStatus::strict: return "strict";
        case ConstraintStatus::weak: return "weak";
        case ConstraintStatus::violated: return "violated";
    }
    return "unknown";
}

bool ConstraintReport::all_hold() const {
    for (const auto& c : checks) {
        if (c.status == ConstraintStatus::violated) return false;
    }
    return true;
}

bool ConstraintReport::all_strict() const {
    for (const auto& c : checks) {
        if (c.status != ConstraintStatus::strict) return false;
    }
    return true;
}

ConstraintReport verify_constraints(const MenuSolution& sol) {
    ConstraintReport report;
    auto classify = [](const Rational& slack) {
        int s = sgn(slack);
        return s > 0 ? ConstraintStatus::strict : (s == 0 ? ConstraintStatus::weak : ConstraintStatus::violated);
    };
    for (const auto& row : sol.rows) {
        Rational theta = Rational(row.type_index) - Rational(1, sol.gamma);
        Rational own = agent_utility(Contract{row.q, row.t}, theta);
        report.checks.push_back(ConstraintCheck{"PC", row.type_index, 0, own, classify(own)});
        for (const auto& other : sol.rows) {
            if (other.type_index == row.type_index) continue;
            Rational slack = own - agent_utility(Contract{other.q, other.t}, theta);
            report.checks.push_back(ConstraintCheck{"IC", row.type_index, other.type_index, slack, classify(slack)});
        }
    }
    return report;
}

}  // namespace screenlab
