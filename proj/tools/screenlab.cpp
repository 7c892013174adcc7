#include "screenlab/reports.hpp"
#include "screenlab/scenario.hpp"
#include "screenlab/suites.hpp"
#include "screenlab/tables.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace screenlab;
namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 a check failed or the engine did not converge,
// 2 bad input.
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

struct Config {
    std::string scenario_path;
    std::string out_dir = "out";
    std::uint64_t seed = kDefaultSeed;
    std::optional<long> weights;
    std::optional<int> levels;
    std::string target;
    int random_cases = 0;
    bool self_test = false;
};

class Output {
public:
    Output(const Config& cfg, std::vector<std::string> preamble) : dir_(cfg.out_dir), preamble_(std::move(preamble)) {
        fs::create_directories(dir_);
    }

    void csv(const std::string& name, const Table& t) const {
        write_text_file((dir_ / (name + ".csv")).string(), to_csv(t, preamble_));
    }
    void text(const std::string& name, const std::string& title, const Table& t) const {
        write_text_file((dir_ / (name + ".txt")).string(), to_text(t, title, preamble_));
    }
    void both(const std::string& name, const std::string& title, const Table& t) const {
        csv(name, t);
        text(name, title, t);
    }
    void raw(const std::string& file, const std::string& content) const {
        write_text_file((dir_ / file).string(), content);
    }

private:
    fs::path dir_;
    std::vector<std::string> preamble_;
};

std::vector<std::string> preamble(const Config& cfg, const Scenario* s) {
    std::vector<std::string> p{"seed=" + std::to_string(cfg.seed)};
    if (s) {
        p.push_back("scenario=" + s->name);
        p.push_back("W=" + std::to_string(s->weight_denominator));
        p.push_back("level_cap=" + std::to_string(s->level_cap));
    }
    return p;
}

void apply_overrides(const Config& cfg, Scenario& s) {
    if (cfg.weights) s.weight_denominator = *cfg.weights;
    if (cfg.levels) s.level_cap = *cfg.levels;
}

Scenario scenario_from_config(const Config& cfg) {
    if (cfg.scenario_path.empty()) throw ScenarioError("--scenario is required for this command");
    Scenario s = load_scenario(cfg.scenario_path);
    apply_overrides(cfg, s);
    validate_scenario(s);
    return s;
}

MarginalBelief menu_belief(const Scenario& s) {
    if (s.belief) return *s.belief;
    std::vector<Rational> w(static_cast<size_t>(s.theta_p.size()), Rational(1));
    return belief_from_weights(s.theta_p, w);
}

int cmd_solve_menu(const Config& cfg) {
    Scenario s = scenario_from_config(cfg);
    Output out(cfg, preamble(cfg, &s));
    MarginalBelief p = menu_belief(s);
    MenuSolution sol = optimal_menu(p, s.v, s.types);
    ConstraintReport report = verify_constraints(sol);

    std::string title = "Optimal menu for belief " + p.key();
    out.both("menu", title, menu_table(sol, s.types));
    out.both("constraints", "Participation and incentive constraints", constraint_table(report));
    Table summary;
    summary.headers = {"field", "value"};
    summary.rows = {{"menu", menu_label(sol.menu())},
                    {"unique", sol.unique ? "yes" : "no"},
                    {"robust", sol.robust ? "yes" : "no"},
                    {"strictly_monotone", sol.strictly_monotone ? "yes" : "no"},
                    {"principal_expected_payoff", to_fraction(sol.principal_expected_payoff)},
                    {"principal_expected_payoff_decimal", to_decimal(sol.principal_expected_payoff)},
                    {"constraints_hold", report.all_hold() ? "yes" : "no"}};
    out.both("menu_summary", title, summary);
    out.both("validation", "Value function checks", validation_table(validate_value_function(s.v)));

    std::cout << to_text(menu_table(sol, s.types), title, {}) << "\n" << to_text(summary, "", {});
    return report.all_hold() ? 0 : kExitCheckFailed;
}

Table oracle_table(const std::vector<OracleComparison>& cases) {
    Table t;
    t.headers = {"case", "menu"};
    push_rational_headers(t.headers, "foc_payoff");
    push_rational_headers(t.headers, "oracle_payoff");
    t.headers.insert(t.headers.end(), {"match", "robust", "menu_among_maximizers", "menus_evaluated", "transfer_bound"});
    for (const auto& c : cases) {
        std::vector<std::string> row{c.label, menu_label(c.tested)};
        push_rational(row, c.foc_payoff);
        push_rational(row, c.oracle_payoff);
        row.insert(row.end(), {c.match ? "yes" : "no", c.solution.robust ? "yes" : "no", c.in_maximizers ? "yes" : "no",
                               std::to_string(c.menus_evaluated), std::to_string(c.transfer_bound)});
        t.rows.push_back(std::move(row));
    }
    return t;
}

int cmd_oracle_check(const Config& cfg) {
    std::vector<OracleComparison> cases;
    std::optional<Scenario> scenario;
    if (!cfg.scenario_path.empty()) {
        scenario = scenario_from_config(cfg);
        cases.push_back(oracle_compare(scenario->name, menu_belief(*scenario), scenario->v, scenario->types, cfg.self_test));
    }
    if (cfg.random_cases > 0) {
        std::mt19937_64 rng(cfg.seed);
        const TypeGrid grid = make_type_grid(10, 3);
        for (int i = 0; i < cfg.random_cases; ++i) {
            int b = std::uniform_int_distribution<int>(6, 8)(rng);
            ValueFunction v = random_oracle_value_function(rng, b);
            MarginalBelief p = random_oracle_belief(rng, 3);
            cases.push_back(oracle_compare("random-" + std::to_string(i) + " b=" + std::to_string(b) + " " + p.key(), p, v,
                                           grid, cfg.self_test));
        }
    }
    if (cases.empty()) throw ScenarioError("oracle-check needs --scenario or --random N");

    Output out(cfg, preamble(cfg, scenario ? &*scenario : nullptr));
    Table t = oracle_table(cases);
    out.both("oracle", cfg.self_test ? "Oracle self-test (perturbed menus)" : "FOC menu against exhaustive search", t);
    long mismatches = 0;
    for (const auto& c : cases) mismatches += c.match ? 0 : 1;
    std::cout << to_text(t, "", {});
    if (cfg.self_test) {
        // Every perturbed menu must be caught.
        std::cout << "self-test: " << mismatches << " of " << cases.size() << " perturbations detected\n";
        return mismatches == static_cast<long>(cases.size()) ? 0 : kExitCheckFailed;
    }
    std::cout << mismatches << " mismatch(es) in " << cases.size() << " case(s)\n";
    return mismatches == 0 ? 0 : kExitCheckFailed;
}

int rationalize_and_write(const Config& cfg, const Scenario& s, const Output& out) {
    Engine engine(s);
    RationalizabilityState state = engine.run();
    out.both("trace", "Elimination trace", trace_table(state.trace));
    out.csv("levels", level_table(engine, state));
    out.both("supports", "Principal belief supports per level", support_table(engine, state));
    std::vector<Verdict> verdicts = fixed_point_verdicts(engine, state);
    out.both("verdicts", "Fixed-point checks (" + side_name(unawareness_side(s)) + " unawareness)", verdict_table(verdicts));
    if (state.converged) {
        OutcomeSummary summary = outcome_summary(engine, state);
        out.both("outcome", "Outcomes at the fixed point, level " + std::to_string(state.fixed_point_level),
                 outcome_table(engine, summary));
        out.csv("menus", menus_table(engine, summary));
    }
    std::cout << to_text(verdict_table(verdicts), s.name, {});
    if (!state.converged) {
        std::cerr << "no fixed point within " << s.level_cap << " levels\n";
        return kExitCheckFailed;
    }
    for (const auto& v : verdicts) {
        if (!v.pass) return kExitCheckFailed;
    }
    return 0;
}

int cmd_rationalize(const Config& cfg) {
    Scenario s = scenario_from_config(cfg);
    return rationalize_and_write(cfg, s, Output(cfg, preamble(cfg, &s)));
}

int write_example1_check(const Scenario& s, const Output& out) {
    Example1Report r = example1_report(s);
    std::string known_q, full_q, level3;
    for (const auto& row : r.known.rows) known_q += (known_q.empty() ? "" : " ") + std::to_string(row.q);
    for (const auto& row : r.full.rows) full_q += (full_q.empty() ? "" : " ") + std::to_string(row.q);
    for (const auto& m : r.level3_messages) level3 += (level3.empty() ? "" : " ") + m;
    Table t;
    t.headers = {"item", "value", "decimal"};
    t.rows = {{"known-types menu", menu_label(r.known.menu()), ""},
              {"known-types quantities", known_q, ""},
              {"lowest type payoff, own contract", to_fraction(r.known_payoff), to_decimal(r.known_payoff)},
              {"full-awareness menu", menu_label(r.full.menu()), ""},
              {"full-awareness quantities", full_q, ""},
              {"lowest type payoff, cross pick", to_fraction(r.cross_payoff), to_decimal(r.cross_payoff)},
              {"level-3 messages of the lowest type in the top tree", level3, ""},
              {"theta_p survives at level 3", r.theta_p_survives_level3 ? "yes" : "no", ""}};
    out.both("example1_check", "Lowest type: keeping the principal unaware against raising awareness", t);
    std::cout << to_text(t, "", {}) << "\n";
    return r.theta_p_survives_level3 && r.known_payoff > r.cross_payoff ? 0 : kExitCheckFailed;
}

int cmd_reproduce(const Config& cfg) {
    Scenario s = builtin_scenario(cfg.target);
    apply_overrides(cfg, s);
    validate_scenario(s);
    Output out(cfg, preamble(cfg, &s));
    out.raw("scenario.json", scenario_to_json(s).dump(2) + "\n");
    int status = 0;
    if (cfg.target == "example1") status = write_example1_check(s, out);
    int engine_status = rationalize_and_write(cfg, s, out);
    return status != 0 ? status : engine_status;
}

int cmd_suite(const Config& cfg) {
    std::vector<SuiteResult> results = run_all_suites(cfg.seed);
    Table t;
    t.headers = {"suite", "result", "cases", "violations", "detail"};
    bool all = true;
    for (const auto& r : results) {
        t.rows.push_back({r.name, r.pass ? "pass" : "fail", std::to_string(r.cases), std::to_string(r.violations), r.detail});
        all = all && r.pass;
    }
    Output out(cfg, preamble(cfg, nullptr));
    out.both("suite", "Property suites", t);
    std::cout << to_text(t, "", {});
    for (const auto& r : results) {
        if (!r.pass) std::cerr << "failed: " << r.name << ": " << r.detail << "\n";
    }
    return all ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Screening with an unaware principal: optimal menus, oracle checks and disclosure analysis"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--scenario", cfg.scenario_path, "Scenario JSON file");
    app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for randomized suites and fixtures")->capture_default_str();
    app.add_option("--weights", cfg.weights, "Belief grid weight bound W (overrides the scenario)")
        ->check(CLI::PositiveNumber);
    app.add_option("--levels", cfg.levels, "Level cap (overrides the scenario)")->check(CLI::PositiveNumber);

    auto* solve = app.add_subcommand("solve-menu", "Optimal menu for the scenario belief");
    auto* oracle = app.add_subcommand("oracle-check", "Compare the FOC menu with exhaustive search");
    oracle->add_option("--random", cfg.random_cases, "Number of seeded random fixtures")->check(CLI::NonNegativeNumber);
    oracle->add_flag("--self-test", cfg.self_test, "Perturb each menu and require the oracle to flag it");
    auto* rationalize = app.add_subcommand("rationalize", "Run the elimination to its fixed point");
    auto* reproduce = app.add_subcommand("reproduce", "Run a built-in scenario");
    reproduce->add_option("target", cfg.target, "example1, three-type-high or three-type-low")
        ->required()
        ->check(CLI::IsMember({"example1", "three-type-high", "three-type-low"}));
    auto* suite = app.add_subcommand("suite", "Run every property suite");
    for (auto* sub : {solve, oracle, rationalize, reproduce, suite}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve_menu(cfg);
        if (*oracle) return cmd_oracle_check(cfg);
        if (*rationalize) return cmd_rationalize(cfg);
        if (*reproduce) return cmd_reproduce(cfg);
        if (*suite) return cmd_suite(cfg);
    } catch (const ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const EngineError& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
