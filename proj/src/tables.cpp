#include "screenlab/tables.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

namespace screenlab {

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

// Display width in code points, so multi-byte characters pad correctly.
size_t display_width(const std::string& s) {
    size_t n = 0;
    for (unsigned char ch : s) {
        if ((ch & 0xC0) != 0x80) ++n;
    }
    return n;
}

std::string message_list(const MessageLattice& lat, const std::vector<int>& ids) {
    std::string s;
    for (size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + lat.messages[static_cast<size_t>(ids[i])].label();
    return s;
}

std::string option_label(const Option& o) {
    if (o.outside) return "outside";
    return "(" + std::to_string(o.contract.q) + "," + std::to_string(o.contract.t) + ")";
}

}  // namespace

std::string to_csv(const Table& t, const std::vector<std::string>& preamble) {
    std::string out;
    for (const auto& line : preamble) out += "# " + line + "\n";
    for (size_t i = 0; i < t.headers.size(); ++i) out += (i ? "," : "") + csv_cell(t.headers[i]);
    out += "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
        out += "\n";
    }
    return out;
}

std::string to_text(const Table& t, const std::string& title, const std::vector<std::string>& preamble) {
    std::vector<size_t> width(t.headers.size(), 0);
    for (size_t i = 0; i < t.headers.size(); ++i) width[i] = display_width(t.headers[i]);
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], display_width(row[i]));
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) s += "  ";
            s += cells[i];
            if (i + 1 < cells.size()) s.append(width[i] - display_width(cells[i]), ' ');
        }
        return s + "\n";
    };
    std::string out;
    if (!title.empty()) out += title + "\n";
    for (const auto& p : preamble) out += p + "\n";
    if (!title.empty() || !preamble.empty()) out += "\n";
    out += line(t.headers);
    std::vector<std::string> rule;
    for (size_t w : width) rule.push_back(std::string(w, '-'));
    out += line(rule);
    for (const auto& row : t.rows) out += line(row);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void push_rational(std::vector<std::string>& row, const Rational& x) {
    row.push_back(to_fraction(x));
    row.push_back(to_decimal(x));
}

void push_rational_headers(std::vector<std::string>& headers, const std::string& name) {
    headers.push_back(name);
    headers.push_back(name + "_decimal");
}

Table menu_table(const MenuSolution& sol, const TypeGrid& grid) {
    Table t;
    t.headers = {"type_index"};
    push_rational_headers(t.headers, "theta");
    push_rational_headers(t.headers, "probability");
    push_rational_headers(t.headers, "virtual_cost");
    t.headers.insert(t.headers.end(), {"quantity_set", "q", "t"});
    push_rational_headers(t.headers, "rent");
    for (const auto& r : sol.rows) {
        std::vector<std::string> row{std::to_string(r.type_index)};
        push_rational(row, grid.theta(r.type_index));
        push_rational(row, sol.belief.p(r.type_index));
        push_rational(row, r.virtual_cost);
        std::string qs;
        for (size_t i = 0; i < r.quantity_set.size(); ++i) qs += (i ? " " : "") + std::to_string(r.quantity_set[i]);
        row.insert(row.end(), {qs, std::to_string(r.q), std::to_string(r.t)});
        push_rational(row, agent_utility(Contract{r.q, r.t}, grid.theta(r.type_index)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table constraint_table(const ConstraintReport& report) {
    Table t;
    t.headers = {"constraint", "type_index", "deviation_index"};
    push_rational_headers(t.headers, "slack");
    t.headers.push_back("status");
    for (const auto& c : report.checks) {
        std::vector<std::string> row{c.kind, std::to_string(c.type_index), c.kind == "PC" ? "outside" : std::to_string(c.other_index)};
        push_rational(row, c.slack);
        row.push_back(status_name(c.status));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table validation_table(const ValueFunctionReport& report) {
    Table t;
    t.headers = {"property", "name", "status", "first_violation_q"};
    for (const auto& p : report.properties) {
        t.rows.push_back({std::to_string(p.id), p.name, p.pass ? "pass" : "fail",
                          p.first_violation ? std::to_string(*p.first_violation) : ""});
    }
    return t;
}

Table trace_table(const std::vector<TraceRecord>& trace) {
    Table t;
    t.headers = {"level", "actor", "object", "reason"};
    for (const auto& r : trace) t.rows.push_back({std::to_string(r.level), r.actor, r.object, r.reason});
    return t;
}

Table level_table(const Engine& engine, const RationalizabilityState& state) {
    const auto& lat = engine.lattice();
    Table t;
    t.headers = {"level", "tree", "type_index", "allowed_messages", "forced"};
    for (const auto& snap : state.history) {
        for (size_t tr = 0; tr < lat.messages.size(); ++tr) {
            const TypeRange& tree = lat.messages[tr];
            auto forced = forced_disclosure_types(lat, snap.agent, static_cast<int>(tr));
            for (int j = tree.lo; j <= tree.hi; ++j) {
                bool f = std::find(forced.begin(), forced.end(), j) != forced.end();
                t.rows.push_back({std::to_string(snap.level), tree.label(), std::to_string(j),
                                  message_list(lat, snap.agent.at(lat, static_cast<int>(tr), j)), f ? "yes" : "no"});
            }
        }
    }
    return t;
}

Table support_table(const Engine& engine, const RationalizabilityState& state) {
    const auto& lat = engine.lattice();
    Table t;
    t.headers = {"level", "message", "belief_systems", "supports"};
    for (const auto& snap : state.history) {
        if (snap.principal.unconstrained) {
            for (const auto& m : lat.messages) t.rows.push_back({std::to_string(snap.level), m.label(), "unconstrained", ""});
            continue;
        }
        for (size_t i = 0; i < lat.messages.size(); ++i) {
            std::string s;
            for (const auto& r : engine.supports_at(snap.principal, static_cast<int>(i))) s += (s.empty() ? "" : " ") + r.label();
            t.rows.push_back({std::to_string(snap.level), lat.messages[i].label(), std::to_string(snap.principal.alive.size()), s});
        }
    }
    return t;
}

Table outcome_table(const Engine& engine, const OutcomeSummary& summary) {
    const auto& lat = engine.lattice();
    const auto& grid = engine.scenario().types;
    Table t;
    t.headers = {"type_index"};
    push_rational_headers(t.headers, "theta");
    t.headers.insert(t.headers.end(), {"message", "menu_id", "choice", "q", "t"});
    push_rational_headers(t.headers, "agent_payoff");
    push_rational_headers(t.headers, "principal_payoff");
    t.headers.push_back("bunched");
    for (const auto& r : summary.rows) {
        std::vector<std::string> row{std::to_string(r.type_index)};
        push_rational(row, grid.theta(r.type_index));
        row.insert(row.end(), {lat.messages[static_cast<size_t>(r.message)].label(), std::to_string(r.menu_id),
                               option_label(r.choice), std::to_string(r.choice.contract.q), std::to_string(r.choice.contract.t)});
        push_rational(row, r.agent_payoff);
        push_rational(row, r.principal_payoff);
        row.push_back(r.bunched ? "yes" : "no");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table menus_table(const Engine& engine, const OutcomeSummary& summary) {
    Table t;
    t.headers = {"menu_id", "contracts"};
    std::set<int> ids;
    for (const auto& r : summary.rows) ids.insert(r.menu_id);
    for (int id : ids) t.rows.push_back({std::to_string(id), menu_label(engine.pool().menus[static_cast<size_t>(id)])});
    return t;
}

Table verdict_table(const std::vector<Verdict>& verdicts) {
    Table t;
    t.headers = {"check", "result", "detail"};
    for (const auto& v : verdicts) t.rows.push_back({v.name, v.pass ? "pass" : "fail", v.detail});
    return t;
}

}  // namespace screenlab
