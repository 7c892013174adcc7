#include "screenlab/disclosure_game.hpp"

#include "screenlab/exact_lp.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace screenlab {

namespace {

std::string type_list(const std::vector<int>& types) {
    std::string s = "{";
    for (size_t i = 0; i < types.size(); ++i) s += (i ? "," : "") + std::to_string(types[i]);
    return s + "}";
}

bool contains_sorted(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

}  // namespace

void validate_scenario(const Scenario& s) {
    std::vector<std::string> problems;
    if (s.v.b() != s.quantities.b)
        problems.push_back("value table covers 0.." + std::to_string(s.v.b()) + " but b is " + std::to_string(s.quantities.b));
    try {
        check_grid_pair(s.types, s.quantities);
    } catch (const ScenarioError& e) {
        problems.push_back(e.what());
    }
    if (s.theta_p.empty() || !s.theta_bar().contains(s.theta_p))
        problems.push_back("theta_p " + s.theta_p.label() + " must be a nonempty range inside " + s.theta_bar().label());
    if (s.weight_denominator < 1) problems.push_back("weight_denominator must be at least 1");
    if (s.level_cap < 1) problems.push_back("level_cap must be at least 1");
    if (!s.v.values.empty()) {
        auto report = validate_value_function(s.v);
        for (const auto& p : report.properties) {
            if (!p.pass)
                problems.push_back("value function property " + std::to_string(p.id) + " (" + p.name + ") fails at q=" +
                                   std::to_string(p.first_violation.value_or(0)));
        }
    } else {
        problems.push_back("value function is empty");
    }
    if (!problems.empty()) {
        std::string msg = "invalid scenario";
        if (!s.name.empty()) msg += " '" + s.name + "'";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ScenarioError(msg);
    }
}

int MessageLattice::index_of(const TypeRange& message) const {
    for (size_t i = 0; i < messages.size(); ++i) {
        if (messages[i] == message) return static_cast<int>(i);
    }
    throw std::out_of_range("message " + message.label() + " is not in the lattice");
}

std::vector<int> MessageLattice::sub_lattice(int tree) const {
    std::vector<int> out;
    const TypeRange& t = messages.at(static_cast<size_t>(tree));
    for (size_t i = 0; i < messages.size(); ++i) {
        if (t.contains(messages[i])) out.push_back(static_cast<int>(i));
    }
    return out;
}

MessageLattice enumerate_messages(const TypeRange& theta_bar, const TypeRange& theta_p) {
    if (theta_p.empty()) throw std::invalid_argument("theta_p must be nonempty");
    if (!theta_bar.contains(theta_p))
        throw std::invalid_argument("theta_p " + theta_p.label() + " is not within " + theta_bar.label());
    MessageLattice lat{theta_bar, theta_p, {}};
    for (int lo = theta_bar.lo; lo <= theta_p.lo; ++lo) {
        for (int hi = theta_p.hi; hi <= theta_bar.hi; ++hi) lat.messages.push_back(TypeRange{lo, hi});
    }
    return lat;
}

MessageLattice enumerate_messages(const Scenario& s) { return enumerate_messages(s.theta_bar(), s.theta_p); }

const std::vector<int>& AgentDisclosureSet::at(const MessageLattice& lattice, int tree, int type_index) const {
    const TypeRange& t = lattice.messages.at(static_cast<size_t>(tree));
    if (!t.contains(type_index))
        throw std::out_of_range("type " + std::to_string(type_index) + " does not exist in tree " + t.label());
    return allowed.at(static_cast<size_t>(tree)).at(static_cast<size_t>(type_index - t.lo));
}

AgentDisclosureSet full_agent_set(const MessageLattice& lattice) {
    AgentDisclosureSet a;
    for (size_t t = 0; t < lattice.messages.size(); ++t) {
        auto sub = lattice.sub_lattice(static_cast<int>(t));
        a.allowed.emplace_back(static_cast<size_t>(lattice.messages[t].size()), sub);
    }
    return a;
}

std::vector<int> forced_disclosure_types(const MessageLattice& lattice, const AgentDisclosureSet& agent, int message) {
    std::vector<int> out;
    const TypeRange& m = lattice.messages.at(static_cast<size_t>(message));
    for (int j = m.lo; j <= m.hi; ++j) {
        const auto& allowed = agent.at(lattice, message, j);
        if (allowed.size() == 1 && allowed.front() == message) out.push_back(j);
    }
    return out;
}

std::vector<int> possible_senders(const MessageLattice& lattice, const AgentDisclosureSet& agent, int message) {
    std::vector<int> out;
    const TypeRange& m = lattice.messages.at(static_cast<size_t>(message));
    for (int j = m.lo; j <= m.hi; ++j) {
        if (contains_sorted(agent.at(lattice, message, j), message)) out.push_back(j);
    }
    return out;
}

Engine::Engine(Scenario scenario) : scenario_(std::move(scenario)) {
    validate_scenario(scenario_);
    lattice_ = enumerate_messages(scenario_);
}

const FamilyPool& Engine::pool() const {
    build_pool();
    return *pool_;
}

bool Engine::admissible(const PrincipalEntry& e, const std::vector<std::vector<int>>& senders,
                        const std::vector<std::vector<int>>& forced, std::string* why) const {
    for (size_t i = 0; i < lattice_.messages.size(); ++i) {
        auto supp = e.family.members[i].support();
        for (int j : forced[i]) {
            if (!std::binary_search(supp.begin(), supp.end(), j)) {
                if (why) *why = "support excludes type " + std::to_string(j) + ", which can only send " +
                                lattice_.messages[i].label();
                return false;
            }
        }
        if (!senders[i].empty()) {
            for (int j : supp) {
                if (!contains_sorted(senders[i], j)) {
                    if (why) *why = "support includes type " + std::to_string(j) + ", which no longer sends " +
                                    lattice_.messages[i].label();
                    return false;
                }
            }
        }
    }
    return true;
}

void Engine::build_pool() const {
    if (pool_) return;
    auto pool = std::make_unique<FamilyPool>();
    const auto& msgs = lattice_.messages;
    const size_t n = msgs.size();
    AgentDisclosureSet level_one = full_agent_set(lattice_);
    std::vector<std::vector<int>> senders(n);
    std::vector<std::vector<int>> forced(n);
    for (size_t i = 0; i < n; ++i) {
        senders[i] = possible_senders(lattice_, level_one, static_cast<int>(i));
        forced[i] = forced_disclosure_types(lattice_, level_one, static_cast<int>(i));
    }

    std::vector<std::vector<TypeRange>> options(n);
    for (size_t i = 0; i < n; ++i) {
        const TypeRange& m = msgs[i];
        for (int lo = m.lo; lo <= m.hi; ++lo) {
            for (int hi = lo; hi <= m.hi; ++hi) {
                TypeRange r{lo, hi};
                if (!scenario_.theta_p.contains(m.lo) && !r.contains(m.lo)) continue;
                if (!scenario_.theta_p.contains(m.hi) && !r.contains(m.hi)) continue;
                bool ok = true;
                for (int j : forced[i]) ok = ok && r.contains(j);
                if (ok) options[i].push_back(r);
            }
        }
    }

    std::map<std::string, int> solution_index;
    std::map<Menu, int> menu_index;
    std::set<std::string> seen;

    auto add_family = [&](BeliefFamily fam, const std::string& origin) {
        if (!seen.insert(fam.key()).second) return;
        PrincipalEntry entry;
        entry.origin = origin;
        for (const auto& member : fam.members) {
            std::string key = member.key();
            auto it = solution_index.find(key);
            int sid;
            if (it == solution_index.end()) {
                MenuSolution sol;
                try {
                    sol = optimal_menu(member, scenario_.v, scenario_.types);
                } catch (const std::logic_error&) {
                    sol.robust = false;
                    sol.belief = member;
                }
                sid = static_cast<int>(pool->solutions.size());
                pool->solutions.push_back(std::move(sol));
                solution_index[key] = sid;
            } else {
                sid = it->second;
            }
            if (!pool->solutions[static_cast<size_t>(sid)].robust) {
                ++pool->dropped_non_robust;
                return;
            }
            entry.solution_ids.push_back(sid);
        }
        for (int sid : entry.solution_ids) {
            Menu menu = pool->solutions[static_cast<size_t>(sid)].menu();
            auto it = menu_index.find(menu);
            int mid;
            if (it == menu_index.end()) {
                mid = static_cast<int>(pool->menus.size());
                menu_index[menu] = mid;
                std::vector<Rational> pay;
                for (int j = 1; j <= scenario_.types.m; ++j) pay.push_back(best_agent_payoff(menu, scenario_.types.theta(j)));
                pool->menus.push_back(menu);
                pool->menu_payoff.push_back(std::move(pay));
            } else {
                mid = it->second;
            }
            entry.menu_ids.push_back(mid);
        }
        entry.family = std::move(fam);
        pool->entries.push_back(std::move(entry));
    };

    std::vector<TypeRange> chosen;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == n) {
            ++pool->support_assignments;
            std::vector<std::vector<int>> supports;
            for (const auto& r : chosen) {
                std::vector<int> s;
                for (int j = r.lo; j <= r.hi; ++j) s.push_back(j);
                supports.push_back(std::move(s));
            }
            for (auto& fam : enumerate_belief_families(msgs, supports, scenario_.theta_p, scenario_.weight_denominator))
                add_family(std::move(fam), "grid");
            return;
        }
        for (const auto& r : options[i]) {
            bool ok = true;
            for (size_t k = 0; k < i && ok; ++k) {
                ok = monotone_supports_pair(msgs[k], chosen[k], msgs[i], r) &&
                     monotone_supports_pair(msgs[i], r, msgs[k], chosen[k]);
            }
            if (!ok) continue;
            chosen.push_back(r);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);

    for (const auto& given : scenario_.explicit_families) {
        BeliefFamily fam;
        for (const auto& m : msgs) {
            const MarginalBelief* found = nullptr;
            for (const auto& member : given.members) {
                if (member.message == m) found = &member;
            }
            if (!found) throw ScenarioError("explicit belief family has no member for message " + m.label());
            fam.members.push_back(*found);
        }
        std::string reason;
        if (!check_family(fam, scenario_.theta_p, &reason)) throw ScenarioError("explicit belief family rejected: " + reason);
        add_family(std::move(fam), "explicit");
    }
    pool_ = std::move(pool);
}

RationalizabilityState Engine::initial_state() const {
    RationalizabilityState s;
    s.level = 0;
    s.agent = full_agent_set(lattice_);
    s.principal = PrincipalStrategySet{true, {}};
    s.history.push_back(LevelSnapshot{0, s.agent, s.principal});
    return s;
}

std::vector<int> Engine::entries_of(const PrincipalStrategySet& set) const {
    if (!set.unconstrained) return set.alive;
    std::vector<int> all(pool().entries.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
}

std::vector<TypeRange> Engine::supports_at(const PrincipalStrategySet& set, int message) const {
    std::set<TypeRange> out;
    for (int e : entries_of(set)) {
        out.insert(pool().entries[static_cast<size_t>(e)].family.members[static_cast<size_t>(message)].support_hull());
    }
    return {out.begin(), out.end()};
}

Rational Engine::agent_message_payoff(int type_index, int message, int entry) const {
    const auto& e = pool().entries.at(static_cast<size_t>(entry));
    int mid = e.menu_ids.at(static_cast<size_t>(message));
    return pool().menu_payoff[static_cast<size_t>(mid)].at(static_cast<size_t>(type_index - 1));
}

AgentDisclosureSet Engine::agent_step(const RationalizabilityState& state, std::vector<TraceRecord>* trace) const {
    // Against the unconstrained principal every message is a best response
    // to some full-support belief.
    if (state.principal.unconstrained) return state.agent;
    const int level = state.level + 1;
    const auto& p = pool();
    AgentDisclosureSet next = state.agent;
    for (size_t t = 0; t < lattice_.messages.size(); ++t) {
        const TypeRange& tree = lattice_.messages[t];
        auto sub = lattice_.sub_lattice(static_cast<int>(t));
        std::set<std::vector<int>> profiles;
        for (int e : state.principal.alive) {
            std::vector<int> ids;
            for (int m : sub) ids.push_back(p.entries[static_cast<size_t>(e)].menu_ids[static_cast<size_t>(m)]);
            profiles.insert(std::move(ids));
        }
        for (int j = tree.lo; j <= tree.hi; ++j) {
            const auto& current = state.agent.at(lattice_, static_cast<int>(t), j);
            std::set<std::vector<Rational>> vectors;
            for (const auto& ids : profiles) {
                std::vector<Rational> u;
                for (int mid : ids) u.push_back(p.menu_payoff[static_cast<size_t>(mid)][static_cast<size_t>(j - 1)]);
                vectors.insert(std::move(u));
            }
            std::vector<std::vector<Rational>> table(vectors.begin(), vectors.end());
            std::vector<int> kept;
            for (int m : current) {
                int k = static_cast<int>(std::find(sub.begin(), sub.end(), m) - sub.begin());
                if (exists_full_support_rationalizing_belief(k, table)) {
                    kept.push_back(m);
                } else if (trace) {
                    trace->push_back(TraceRecord{
                        level, "agent",
                        "type " + std::to_string(j) + " in tree " + tree.label() + ": message " + lattice_.messages[static_cast<size_t>(m)].label(),
                        "dominated: no full-support belief over " + std::to_string(table.size()) +
                            " surviving principal payoff profiles makes it a best response"});
                }
            }
            if (kept.empty())
                throw EngineError("level " + std::to_string(level) + ": type " + std::to_string(j) + " in tree " +
                                  tree.label() + " has no message left");
            next.allowed[t][static_cast<size_t>(j - tree.lo)] = std::move(kept);
        }
    }
    return next;
}

PrincipalStrategySet Engine::principal_step(const RationalizabilityState& state, std::vector<TraceRecord>* trace) const {
    const int level = state.level + 1;
    if (level <= 1) return PrincipalStrategySet{true, {}};
    const auto& p = pool();
    const size_t n = lattice_.messages.size();
    std::vector<std::vector<int>> senders(n);
    std::vector<std::vector<int>> forced(n);
    for (size_t i = 0; i < n; ++i) {
        senders[i] = possible_senders(lattice_, state.agent, static_cast<int>(i));
        forced[i] = forced_disclosure_types(lattice_, state.agent, static_cast<int>(i));
    }
    std::vector<int> before = entries_of(state.principal);
    PrincipalStrategySet next{false, {}};
    for (int e : before) {
        if (admissible(p.entries[static_cast<size_t>(e)], senders, forced, nullptr)) next.alive.push_back(e);
    }

    if (trace) {
        if (state.principal.unconstrained) {
            trace->push_back(TraceRecord{level, "principal", "belief grid",
                                         "generated " + std::to_string(p.entries.size()) + " belief systems from " +
                                             std::to_string(p.support_assignments) + " support assignments with W=" +
                                             std::to_string(scenario_.weight_denominator) + "; " +
                                             std::to_string(p.dropped_non_robust) +
                                             " candidates dropped for a non-robust menu"});
        }
        for (size_t i = 0; i < n; ++i) {
            auto old_supports = supports_at(state.principal, static_cast<int>(i));
            auto new_supports = supports_at(next, static_cast<int>(i));
            for (const auto& s : old_supports) {
                if (std::find(new_supports.begin(), new_supports.end(), s) != new_supports.end()) continue;
                std::string why;
                std::vector<int> s_types;
                for (int j = s.lo; j <= s.hi; ++j) s_types.push_back(j);
                bool local = false;
                for (int j : forced[i]) local = local || !s.contains(j);
                if (local) {
                    std::vector<int> missing;
                    for (int j : forced[i]) {
                        if (!s.contains(j)) missing.push_back(j);
                    }
                    why = "support excludes forced type(s) " + type_list(missing);
                } else if (!senders[i].empty()) {
                    std::vector<int> stray;
                    for (int j : s_types) {
                        if (!contains_sorted(senders[i], j)) stray.push_back(j);
                    }
                    if (!stray.empty()) why = "support includes type(s) " + type_list(stray) + " that no longer send this message";
                }
                if (why.empty()) why = "every belief system carrying it fails a restriction at another message";
                trace->push_back(TraceRecord{level, "principal",
                                             "message " + lattice_.messages[i].label() + ": support " + s.label(), why});
            }
        }
    }
    if (next.alive.empty())
        throw EngineError("level " + std::to_string(level) + ": no belief system satisfies the level restrictions");
    return next;
}

RationalizabilityState Engine::advance(const RationalizabilityState& state) const {
    RationalizabilityState next;
    next.level = state.level + 1;
    next.trace = state.trace;
    next.agent = agent_step(state, &next.trace);
    next.principal = principal_step(state, &next.trace);
    next.history = state.history;
    next.history.push_back(LevelSnapshot{next.level, next.agent, next.principal});
    // Levels 0 and 1 share the unconstrained principal placeholder, so a
    // repeat only counts from level 2 on.
    if (next.level >= 2 && next.agent == state.agent && next.principal == state.principal) {
        next.converged = true;
        next.fixed_point_level = state.level;
    }
    return next;
}

RationalizabilityState Engine::run() const {
    RationalizabilityState state = initial_state();
    while (!state.converged && state.level < scenario_.level_cap) state = advance(state);
    return state;
}

RationalizabilityState run_rationalizability(const Scenario& scenario) { return Engine(scenario).run(); }

OutcomeSummary outcome_summary(const Engine& engine, const RationalizabilityState& state) {
    OutcomeSummary out;
    const auto& lat = engine.lattice();
    const auto& pool = engine.pool();
    const auto& sc = engine.scenario();
    int top = lat.top_index();
    auto entries = engine.entries_of(state.principal);
    const TypeRange& tree = lat.messages[static_cast<size_t>(top)];
    for (int j = tree.lo; j <= tree.hi; ++j) out.surviving_messages[j] = state.agent.at(lat, top, j);

    for (int j = tree.lo; j <= tree.hi; ++j) {
        for (int m : out.surviving_messages[j]) {
            std::set<int> menu_ids;
            for (int e : entries) menu_ids.insert(pool.entries[static_cast<size_t>(e)].menu_ids[static_cast<size_t>(m)]);
            for (int mid : menu_ids) {
                const Menu& menu = pool.menus[static_cast<size_t>(mid)];
                for (const auto& o : agent_choice(menu, sc.types.theta(j))) {
                    OutcomeRow row;
                    row.type_index = j;
                    row.message = m;
                    row.menu_id = mid;
                    row.choice = o;
                    row.agent_payoff = o.outside ? Rational(0) : agent_utility(o.contract, sc.types.theta(j));
                    row.principal_payoff = o.outside ? Rational(0) : principal_utility(o.contract, sc.v);
                    out.rows.push_back(row);
                }
            }
        }
    }
    for (auto& row : out.rows) {
        if (row.choice.outside) continue;
        for (const auto& other : out.rows) {
            if (other.type_index != row.type_index && other.message == row.message && other.menu_id == row.menu_id &&
                !other.choice.outside && other.choice.contract == row.choice.contract)
                row.bunched = true;
        }
    }
    return out;
}

UnawarenessSide unawareness_side(const Scenario& s) {
    bool lower = s.theta_p.lo > 1;
    bool upper = s.theta_p.hi < s.types.m;
    if (!lower && !upper) return UnawarenessSide::none;
    if (lower && upper) return UnawarenessSide::two_sided;
    return upper ? UnawarenessSide::high : UnawarenessSide::low;
}

std::string side_name(UnawarenessSide side) {
    switch (side) {
        case UnawarenessSide::none: return "none";
        case UnawarenessSide::high: return "high";
        case UnawarenessSide::low: return "low";
        case UnawarenessSide::two_sided: return "two-sided";
    }
    return "unknown";
}

std::vector<Verdict> fixed_point_verdicts(const Engine& engine, const RationalizabilityState& state) {
    std::vector<Verdict> out;
    const auto& lat = engine.lattice();
    const auto& sc = engine.scenario();
    const auto& pool = engine.pool();
    auto entries = engine.entries_of(state.principal);
    out.push_back(Verdict{"fixed point reached", state.converged,
                          state.converged ? "level " + std::to_string(state.fixed_point_level) + " repeated at level " +
                                                std::to_string(state.level)
                                          : "level cap " + std::to_string(sc.level_cap) + " reached"});
    if (!state.converged) return out;
    const int tp = lat.theta_p_index();
    auto side = unawareness_side(sc);

    if (side == UnawarenessSide::high) {
        Verdict v{"higher unaware types disclose in every tree", true, ""};
        for (size_t t = 0; t < lat.messages.size(); ++t) {
            const TypeRange& tree = lat.messages[t];
            for (int j = tree.lo; j <= tree.hi; ++j) {
                if (sc.theta_p.contains(j)) continue;
                const auto& allowed = state.agent.at(lat, static_cast<int>(t), j);
                if (!(allowed.size() == 1 && allowed.front() == static_cast<int>(t))) {
                    v.pass = false;
                    v.detail += "type " + std::to_string(j) + " in tree " + tree.label() + " may send " +
                                std::to_string(allowed.size()) + " message(s); ";
                }
            }
        }
        if (v.pass) v.detail = "every type outside theta_p sends its full tree";
        out.push_back(v);

        Verdict q{"known types' quantities never fall after disclosure", true, ""};
        long strict = 0;
        for (int e : entries) {
            const auto& ent = pool.entries[static_cast<size_t>(e)];
            const auto& sol_p = pool.solutions[static_cast<size_t>(ent.solution_ids[static_cast<size_t>(tp)])];
            int min_p = sol_p.belief.support_hull().lo;
            for (size_t m = 0; m < lat.messages.size(); ++m) {
                if (static_cast<int>(m) == tp) continue;
                const auto& sol = pool.solutions[static_cast<size_t>(ent.solution_ids[m])];
                int min_m = sol.belief.support_hull().lo;
                for (const auto& row : sol_p.rows) {
                    if (!sol.belief.supported(row.type_index)) continue;
                    long qm = sol.row(row.type_index).q;
                    if (min_m == min_p && qm != row.q) q.pass = false;
                    if (qm < row.q) q.pass = false;
                    if (qm > row.q) ++strict;
                }
            }
        }
        q.detail = q.pass ? std::to_string(strict) + " strict increases across surviving belief systems"
                          : "a surviving belief system lowers a known type's quantity";
        out.push_back(q);
    } else if (side == UnawarenessSide::low) {
        Verdict v{"every type withholds in every tree", true, ""};
        for (size_t t = 0; t < lat.messages.size(); ++t) {
            const TypeRange& tree = lat.messages[t];
            for (int j = tree.lo; j <= tree.hi; ++j) {
                const auto& allowed = state.agent.at(lat, static_cast<int>(t), j);
                if (!(allowed.size() == 1 && allowed.front() == tp)) {
                    v.pass = false;
                    v.detail += "type " + std::to_string(j) + " in tree " + tree.label() + "; ";
                }
            }
        }
        if (v.pass) v.detail = "all types send theta_p";
        out.push_back(v);

        Verdict b{"unaware lower types bunch on the best known type's contract", true, ""};
        long checked = 0;
        for (int e : entries) {
            const auto& ent = pool.entries[static_cast<size_t>(e)];
            const auto& sol = pool.solutions[static_cast<size_t>(ent.solution_ids[static_cast<size_t>(tp)])];
            const MenuRow& first = sol.rows.front();
            Menu menu = sol.menu();
            for (int j = 1; j < sc.theta_p.lo; ++j) {
                auto choice = agent_choice(menu, sc.types.theta(j));
                ++checked;
                if (!(choice.size() == 1 && !choice.front().outside && choice.front().contract == Contract{first.q, first.t})) {
                    b.pass = false;
                    b.detail = "type " + std::to_string(j) + " does not pick type " + std::to_string(first.type_index) +
                               "'s contract in menu " + menu_label(menu);
                }
            }
        }
        if (b.pass) b.detail = std::to_string(checked) + " (type, menu) pairs checked";
        out.push_back(b);
    } else if (side == UnawarenessSide::none) {
        out.push_back(Verdict{"full awareness", true, "single message; standard screening menus"});
    } else {
        out.push_back(Verdict{"two-sided unawareness", true, "no prediction is checked for this case"});
    }
    return out;
}

}  // namespace screenlab
