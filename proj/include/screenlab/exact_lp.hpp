#pragma once

#include "screenlab/rational.hpp"

#include <vector>

namespace screenlab {

// Decides whether {x >= 0 : A x >= b} is nonempty, exactly, with a phase-one
// simplex under Bland's rule. A is given row by row.
bool feasible_nonnegative(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b);

// True iff some lambda with every entry strictly positive satisfies
// rows[k] . lambda >= 0 for every k. Scaling lets lambda >= 1 stand in for
// lambda > 0, which turns the question into a plain feasibility problem.
bool exists_strictly_positive_solution(const std::vector<std::vector<Rational>>& rows);

// payoff_table[s][m] is the agent's payoff from message m when the principal
// plays entry s. True iff a full-support distribution over entries makes the
// candidate message weakly optimal against every other message. Throws
// std::invalid_argument on an empty entry set.
bool exists_full_support_rationalizing_belief(int candidate, const std::vector<std::vector<Rational>>& payoff_table);

}  // namespace screenlab
