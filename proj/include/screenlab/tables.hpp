#pragma once

#include "screenlab/disclosure_game.hpp"
#include "screenlab/menu_design.hpp"

#include <string>
#include <vector>

namespace screenlab {

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

// Header lines become "# key=value" comments ahead of the CSV body.
std::string to_csv(const Table& t, const std::vector<std::string>& preamble);
std::string to_text(const Table& t, const std::string& title, const std::vector<std::string>& preamble);
void write_text_file(const std::string& path, const std::string& content);

// Appends "<name>" and "<name>_decimal" cells.
void push_rational(std::vector<std::string>& row, const Rational& x);
void push_rational_headers(std::vector<std::string>& headers, const std::string& name);

Table menu_table(const MenuSolution& sol, const TypeGrid& grid);
Table constraint_table(const ConstraintReport& report);
Table validation_table(const ValueFunctionReport& report);
Table trace_table(const std::vector<TraceRecord>& trace);
Table level_table(const Engine& engine, const RationalizabilityState& state);
Table support_table(const Engine& engine, const RationalizabilityState& state);
Table outcome_table(const Engine& engine, const OutcomeSummary& summary);
Table menus_table(const Engine& engine, const OutcomeSummary& summary);
Table verdict_table(const std::vector<Verdict>& verdicts);

}  // namespace screenlab
