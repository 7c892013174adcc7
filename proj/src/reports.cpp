#include "screenlab/reports.hpp"

#include <algorithm>
#include <stdexcept>

namespace screenlab {

Example1Report example1_report(const Scenario& s) {
    if (!s.belief) throw ScenarioError("example check needs a scenario belief on theta_p");
    if (s.explicit_families.empty()) throw ScenarioError("example check needs an explicit belief system");
    Engine engine(s);
    const auto& lat = engine.lattice();
    const int top = lat.top_index();
    const int tp = lat.theta_p_index();
    const int lowest = s.theta_bar().lo;

    Example1Report r;
    r.known = optimal_menu(*s.belief, s.v, s.types);
    r.full = optimal_menu(s.explicit_families.front().members[static_cast<size_t>(top)], s.v, s.types);
    r.known_payoff = agent_utility(Contract{r.known.row(lowest).q, r.known.row(lowest).t}, s.types.theta(lowest));
    r.cross_payoff = best_agent_payoff(r.full.menu(), s.types.theta(lowest));

    RationalizabilityState state = engine.initial_state();
    while (state.level < 3) state = engine.advance(state);
    for (int msg : state.agent.at(lat, top, lowest)) {
        r.level3_messages.push_back(lat.messages[static_cast<size_t>(msg)].label());
        if (msg == tp) r.theta_p_survives_level3 = true;
    }
    return r;
}

OracleComparison oracle_compare(const std::string& label, const MarginalBelief& p, const ValueFunction& v,
                                const TypeGrid& grid, bool perturb) {
    OracleComparison c;
    c.label = label;
    c.solution = optimal_menu(p, v, grid);
    std::vector<Contract> contracts = c.solution.menu();
    if (perturb) {
        auto top = std::max_element(contracts.begin(), contracts.end(),
                                    [](const Contract& a, const Contract& b) { return a.q < b.q; });
        if (top->t == 0) throw std::invalid_argument("cannot perturb a zero transfer");
        --top->t;
    }
    c.tested = make_menu(std::move(contracts));
    c.foc_payoff = expected_principal_payoff(c.tested, p, v, grid, TieRule::adversarial);
    OracleResult oracle = brute_force_best_menu(p, v, grid, static_cast<int>(p.support().size()));
    c.oracle_payoff = oracle.best_payoff;
    c.match = c.foc_payoff == c.oracle_payoff;
    c.in_maximizers = std::find(oracle.maximizers.begin(), oracle.maximizers.end(), c.tested) != oracle.maximizers.end();
    c.menus_evaluated = oracle.menus_evaluated;
    c.transfer_bound = oracle.transfer_bound;
    return c;
}

}  // namespace screenlab
