#include "screenlab/exact_lp.hpp"

#include <stdexcept>

namespace screenlab {

bool feasible_nonnegative(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b) {
    const size_t rows = A.size();
    if (b.size() != rows) throw std::invalid_argument("right-hand side length differs from row count");
    if (rows == 0) return true;
    const size_t n = A.front().size();
    for (const auto& r : A) {
        if (r.size() != n) throw std::invalid_argument("ragged constraint matrix");
    }

    // Columns: x (n), surplus s (rows), artificial a (rows). Each row reads
    // sign * (A x - s) + a = |b|, so the initial basis is all artificials.
    const size_t cols = n + 2 * rows;
    std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(cols + 1));
    std::vector<size_t> basis(rows);
    for (size_t i = 0; i < rows; ++i) {
        int sign = sgn(b[i]) < 0 ? -1 : 1;
        for (size_t j = 0; j < n; ++j) tab[i][j] = sign * A[i][j];
        tab[i][n + i] = -sign;
        tab[i][n + rows + i] = 1;
        tab[i][cols] = sign * b[i];
        basis[i] = n + rows + i;
    }
    auto is_artificial = [&](size_t j) { return j >= n + rows; };

    while (true) {
        // Reduced cost of column j is -(sum of column entries in rows whose
        // basic variable is artificial), plus one for artificial columns.
        size_t entering = cols;
        for (size_t j = 0; j < cols; ++j) {
            bool basic = false;
            for (size_t i = 0; i < rows; ++i) basic = basic || basis[i] == j;
            if (basic) continue;
            Rational rc = is_artificial(j) ? Rational(1) : Rational(0);
            for (size_t i = 0; i < rows; ++i) {
                if (is_artificial(basis[i])) rc -= tab[i][j];
            }
            if (sgn(rc) < 0) {
                entering = j;
                break;
            }
        }
        if (entering == cols) break;

        size_t leave = rows;
        Rational best_ratio;
        for (size_t i = 0; i < rows; ++i) {
            if (sgn(tab[i][entering]) <= 0) continue;
            Rational ratio = tab[i][cols] / tab[i][entering];
            if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == rows) throw std::logic_error("phase-one objective unbounded, which is impossible");

        Rational pivot = tab[leave][entering];
        for (auto& x : tab[leave]) x /= pivot;
        for (size_t i = 0; i < rows; ++i) {
            if (i == leave || sgn(tab[i][entering]) == 0) continue;
            Rational f = tab[i][entering];
            for (size_t j = 0; j <= cols; ++j) {
                if (sgn(tab[leave][j]) != 0) tab[i][j] -= f * tab[leave][j];
            }
        }
        basis[leave] = entering;
    }

    for (size_t i = 0; i < rows; ++i) {
        if (is_artificial(basis[i]) && sgn(tab[i][cols]) != 0) return false;
    }
    return true;
}

bool exists_strictly_positive_solution(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return true;
    // lambda = 1 + x with x >= 0: rows . x >= -rows . 1.
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    bool all_satisfied = true;
    for (const auto& r : rows) {
        Rational sum = 0;
        for (const auto& x : r) sum += x;
        if (sgn(sum) < 0) all_satisfied = false;
        A.push_back(r);
        b.push_back(-sum);
    }
    if (all_satisfied) return true;
    return feasible_nonnegative(A, b);
}

bool exists_full_support_rationalizing_belief(int candidate, const std::vector<std::vector<Rational>>& payoff_table) {
    if (payoff_table.empty()) throw std::invalid_argument("full-support belief over an empty entry set");
    const size_t messages = payoff_table.front().size();
    if (candidate < 0 || static_cast<size_t>(candidate) >= messages)
        throw std::out_of_range("candidate message index out of range");
    std::vector<std::vector<Rational>> rows;
    for (size_t m = 0; m < messages; ++m) {
        if (static_cast<int>(m) == candidate) continue;
        std::vector<Rational> row;
        bool any_negative = false;
        bool any_positive = false;
        for (const auto& entry : payoff_table) {
            if (entry.size() != messages) throw std::invalid_argument("ragged payoff table");
            Rational d = entry[static_cast<size_t>(candidate)] - entry[m];
            any_negative = any_negative || sgn(d) < 0;
            any_positive = any_positive || sgn(d) > 0;
            row.push_back(d);
        }
        if (!any_negative) continue;
        if (!any_positive) return false;
        rows.push_back(std::move(row));
    }
    return exists_strictly_positive_solution(rows);
}

}  // namespace screenlab
