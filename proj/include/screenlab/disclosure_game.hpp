#pragma once

#include "screenlab/beliefs.hpp"
#include "screenlab/menu_design.hpp"
#include "screenlab/model_core.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace screenlab {

// Raised when the elimination engine reaches a state the model rules out,
// such as an agent left with no message.
class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string name;
    TypeGrid types;
    QuantityGrid quantities;
    ValueFunction v;
    TypeRange theta_p;
    long weight_denominator = 1;
    int level_cap = 20;
    // Extra belief systems added to the generated grid; each must carry one
    // member per message of the lattice.
    std::vector<BeliefFamily> explicit_families;
    // Single belief used by the menu commands.
    std::optional<MarginalBelief> belief;

    TypeRange theta_bar() const { return TypeRange{1, types.m}; }
};

// Throws ScenarioError describing every failed check.
void validate_scenario(const Scenario& s);

struct MessageLattice {
    TypeRange theta_bar;
    TypeRange theta_p;
    std::vector<TypeRange> messages;  // ordered by (min, max)

    int index_of(const TypeRange& message) const;
    int theta_p_index() const { return index_of(theta_p); }
    int top_index() const { return index_of(theta_bar); }
    // Indices of the messages contained in messages[tree].
    std::vector<int> sub_lattice(int tree) const;
};

MessageLattice enumerate_messages(const TypeRange& theta_bar, const TypeRange& theta_p);
MessageLattice enumerate_messages(const Scenario& s);

// allowed[tree][j - messages[tree].lo] lists the message indices type j may
// still send in that tree.
struct AgentDisclosureSet {
    std::vector<std::vector<std::vector<int>>> allowed;

    const std::vector<int>& at(const MessageLattice& lattice, int tree, int type_index) const;
    bool operator==(const AgentDisclosureSet&) const = default;
};

AgentDisclosureSet full_agent_set(const MessageLattice& lattice);

// Types in messages[message] whose only allowed message in that tree is the
// message itself.
std::vector<int> forced_disclosure_types(const MessageLattice& lattice, const AgentDisclosureSet& agent, int message);
// Types in messages[message] that may send it in that tree.
std::vector<int> possible_senders(const MessageLattice& lattice, const AgentDisclosureSet& agent, int message);

// A belief system together with the robust optimal menu it induces at every
// message.
struct PrincipalEntry {
    BeliefFamily family;
    std::vector<int> solution_ids;  // per message, into FamilyPool::solutions
    std::vector<int> menu_ids;      // per message, into FamilyPool::menus
    std::string origin;             // "grid" or "explicit"
};

struct FamilyPool {
    std::vector<PrincipalEntry> entries;
    std::vector<MenuSolution> solutions;
    std::vector<Menu> menus;
    // menu_payoff[menu][j-1]: best payoff of type j facing that menu.
    std::vector<std::vector<Rational>> menu_payoff;
    long support_assignments = 0;
    long dropped_non_robust = 0;
};

struct PrincipalStrategySet {
    bool unconstrained = true;
    std::vector<int> alive;  // sorted pool indices

    bool operator==(const PrincipalStrategySet&) const = default;
};

struct TraceRecord {
    int level = 0;
    std::string actor;
    std::string object;
    std::string reason;
};

struct LevelSnapshot {
    int level = 0;
    AgentDisclosureSet agent;
    PrincipalStrategySet principal;
};

struct RationalizabilityState {
    int level = 0;
    AgentDisclosureSet agent;
    PrincipalStrategySet principal;
    std::vector<LevelSnapshot> history;
    std::vector<TraceRecord> trace;
    bool converged = false;
    int fixed_point_level = -1;
};

class Engine {
public:
    explicit Engine(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }
    const MessageLattice& lattice() const { return lattice_; }
    const FamilyPool& pool() const;

    RationalizabilityState initial_state() const;
    // Level k+1 agent sets from the level-k state.
    AgentDisclosureSet agent_step(const RationalizabilityState& state, std::vector<TraceRecord>* trace) const;
    // Level k+1 principal sets from the level-k state.
    PrincipalStrategySet principal_step(const RationalizabilityState& state, std::vector<TraceRecord>* trace) const;
    RationalizabilityState advance(const RationalizabilityState& state) const;
    // Iterates until a level repeats its predecessor or the level cap is hit.
    RationalizabilityState run() const;

    // Agent payoff from sending `message` when the principal plays `entry`.
    Rational agent_message_payoff(int type_index, int message, int entry) const;
    // Distinct supports found at a message among the given entries.
    std::vector<TypeRange> supports_at(const PrincipalStrategySet& set, int message) const;
    std::vector<int> entries_of(const PrincipalStrategySet& set) const;

private:
    void build_pool() const;
    bool admissible(const PrincipalEntry& e, const std::vector<std::vector<int>>& senders,
                    const std::vector<std::vector<int>>& forced, std::string* why) const;

    Scenario scenario_;
    MessageLattice lattice_;
    mutable std::unique_ptr<FamilyPool> pool_;
};

RationalizabilityState run_rationalizability(const Scenario& scenario);

struct OutcomeRow {
    int type_index = 0;
    int message = 0;
    int menu_id = 0;
    Option choice;
    Rational agent_payoff;
    Rational principal_payoff;
    bool bunched = false;
};

struct OutcomeSummary {
    std::map<int, std::vector<int>> surviving_messages;  // type -> messages in the top tree
    std::vector<OutcomeRow> rows;
};

OutcomeSummary outcome_summary(const Engine& engine, const RationalizabilityState& state);

enum class UnawarenessSide { none, high, low, two_sided };
UnawarenessSide unawareness_side(const Scenario& s);
std::string side_name(UnawarenessSide side);

struct Verdict {
    std::string name;
    bool pass = true;
    std::string detail;
};

// Fixed-point checks that apply to the scenario's unawareness side.
std::vector<Verdict> fixed_point_verdicts(const Engine& engine, const RationalizabilityState& state);

}  // namespace screenlab
