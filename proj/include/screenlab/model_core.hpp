#pragma once

#include "screenlab/rational.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace screenlab {

// Raised when scenario primitives fail validation.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cost types theta_j = j - 1/gamma for j = 1..m. Type indices are 1-based
// throughout the library, so ceil(theta_j) == j.
struct TypeGrid {
    long gamma = 0;
    int m = 0;
    std::vector<Rational> types;

    const Rational& theta(int j) const;
};

TypeGrid make_type_grid(long gamma, int m);

struct QuantityGrid {
    int b = 0;
};

QuantityGrid make_quantity_grid(int b);

// Throws ScenarioError unless gamma > b and b >= 2m.
void check_grid_pair(const TypeGrid& types, const QuantityGrid& quantities);

struct ValueFunction {
    std::vector<Rational> values;

    int b() const { return static_cast<int>(values.size()) - 1; }
    const Rational& operator()(int q) const;
};

struct QuadraticValue {
    Rational a;
    Rational c;
};

// Tabulates v(q) = a*q - c*q^2 over {0..b}.
ValueFunction make_value_function(const QuadraticValue& spec, int b);
// Takes an explicit table of b+1 values.
ValueFunction make_value_function(const std::vector<Rational>& table, int b);

Rational forward_diff(const ValueFunction& v, int q);
Rational backward_diff(const ValueFunction& v, int q);
// v(q+1) - 2v(q) + v(q-1) for 1 <= q <= b-1.
Rational second_diff(const ValueFunction& v, int q);

struct PropertyStatus {
    int id = 0;
    std::string name;
    bool pass = true;
    std::optional<int> first_violation;
};

struct ValueFunctionReport {
    std::vector<PropertyStatus> properties;

    bool all_pass() const;
    const PropertyStatus& property(int id) const;
};

ValueFunctionReport validate_value_function(const ValueFunction& v);

// ceil(theta * n), checked against ceil(theta) * n. Throws std::logic_error
// when the identity fails, which happens only when n >= gamma.
long ceil_times_int(const Rational& theta, long n);

struct Contract {
    long q = 0;
    long t = 0;

    auto operator<=>(const Contract&) const = default;
};

inline constexpr Contract kOutsideOption{0, 0};

Rational agent_utility(const Contract& c, const Rational& theta);
Rational principal_utility(const Contract& c, const ValueFunction& v);

}  // namespace screenlab
