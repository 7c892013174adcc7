#include "screenlab/model_core.hpp"

#include <string>

namespace screenlab {

const Rational& TypeGrid::theta(int j) const {
    if (j < 1 || j > m) throw std::out_of_range("type index " + std::to_string(j) + " outside 1.." + std::to_string(m));
    return types[static_cast<size_t>(j - 1)];
}

TypeGrid make_type_grid(long gamma, int m) {
    if (gamma <= 1) throw std::invalid_argument("gamma must be at least 2");
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    TypeGrid grid;
    grid.gamma = gamma;
    grid.m = m;
    for (int j = 1; j <= m; ++j) grid.types.push_back(Rational(j) - Rational(1, gamma));
    return grid;
}

QuantityGrid make_quantity_grid(int b) {
    if (b < 1) throw std::invalid_argument("b must be at least 1");
    return QuantityGrid{b};
}

void check_grid_pair(const TypeGrid& types, const QuantityGrid& quantities) {
    if (!(types.gamma > quantities.b))
        throw ScenarioError("gamma (" + std::to_string(types.gamma) + ") must exceed b (" +
                            std::to_string(quantities.b) + ")");
    if (quantities.b < 2 * types.m)
        throw ScenarioError("b (" + std::to_string(quantities.b) + ") must be at least 2m (" +
                            std::to_string(2 * types.m) + ")");
}

const Rational& ValueFunction::operator()(int q) const {
    if (q < 0 || q > b()) throw std::out_of_range("quantity " + std::to_string(q) + " outside 0.." + std::to_string(b()));
    return values[static_cast<size_t>(q)];
}

ValueFunction make_value_function(const QuadraticValue& spec, int b) {
    if (b < 1) throw std::invalid_argument("b must be at least 1");
    ValueFunction v;
    for (int q = 0; q <= b; ++q) v.values.push_back(spec.a * q - spec.c * q * q);
    return v;
}

ValueFunction make_value_function(const std::vector<Rational>& table, int b) {
    if (static_cast<int>(table.size()) != b + 1)
        throw std::invalid_argument("value table has " + std::to_string(table.size()) + " entries, expected " +
                                    std::to_string(b + 1));
    return ValueFunction{table};
}

Rational forward_diff(const ValueFunction& v, int q) {
    if (q < 0 || q > v.b() - 1) throw std::out_of_range("forward difference needs 0 <= q <= b-1");
    return v.values[static_cast<size_t>(q + 1)] - v.values[static_cast<size_t>(q)];
}

Rational backward_diff(const ValueFunction& v, int q) {
    if (q < 1 || q > v.b()) throw std::out_of_range("backward difference needs 1 <= q <= b");
    return v.values[static_cast<size_t>(q)] - v.values[static_cast<size_t>(q - 1)];
}

Rational second_diff(const ValueFunction& v, int q) {
    if (q < 1 || q > v.b() - 1) throw std::out_of_range("second difference needs 1 <= q <= b-1");
    return forward_diff(v, q) - backward_diff(v, q);
}

bool ValueFunctionReport::all_pass() const {
    for (const auto& p : properties) {
        if (!p.pass) return false;
    }
    return true;
}

const PropertyStatus& ValueFunctionReport::property(int id) const {
    for (const auto& p : properties) {
        if (p.id == id) return p;
    }
    throw std::out_of_range("no value function property with id " + std::to_string(id));
}

ValueFunctionReport validate_value_function(const ValueFunction& v) {
    ValueFunctionReport report;
    report.properties = {
        {1, "v(0) = 0", true, std::nullopt},
        {2, "strictly increasing", true, std::nullopt},
        {3, "discrete strict concavity", true, std::nullopt},
        {4, "second difference at least -1", true, std::nullopt},
        {5, "forward difference never an integer", true, std::nullopt},
    };
    auto fail = [&](int id, int q) {
        auto& p = report.properties[static_cast<size_t>(id - 1)];
        if (p.pass) {
            p.pass = false;
            p.first_violation = q;
        }
    };
    if (v.values.empty()) {
        for (int id = 1; id <= 5; ++id) fail(id, 0);
        return report;
    }
    if (v(0) != 0) fail(1, 0);
    for (int q = 0; q + 1 <= v.b(); ++q) {
        Rational d = forward_diff(v, q);
        if (sgn(d) <= 0) fail(2, q);
        if (d.get_den() == 1) fail(5, q);
    }
    for (int q = 1; q + 1 <= v.b(); ++q) {
        Rational dd = second_diff(v, q);
        if (sgn(dd) >= 0) fail(3, q);
        if (dd < -1) fail(4, q);
    }
    return report;
}

long ceil_times_int(const Rational& theta, long n) {
    if (n < 0) throw std::invalid_argument("ceil_times_int needs n >= 0");
    Integer lhs = ceil_of(theta * n);
    Integer rhs = ceil_of(theta) * n;
    if (lhs != rhs)
        throw std::logic_error("ceil(theta*n) != ceil(theta)*n for theta=" + to_fraction(theta) + ", n=" +
                               std::to_string(n) + "; the grid needs n < gamma");
    return to_long(lhs);
}

Rational agent_utility(const Contract& c, const Rational& theta) {
    return Rational(c.t) - theta * c.q;
}

Rational principal_utility(const Contract& c, const ValueFunction& v) {
    return v(static_cast<int>(c.q)) - Rational(c.t);
}

}  // namespace screenlab
