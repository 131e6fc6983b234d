#pragma once

// Exact rational feasibility for small linear programs.

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace vassgames {

using Rational = mpq_class;

/// A point x >= 0 with rows * x = rhs, or nullopt if none exists.
/// Phase-one simplex with Bland's rule; exact arithmetic.
std::optional<std::vector<Rational>> find_nonnegative_solution(const std::vector<std::vector<Rational>>& rows,
                                                               const std::vector<Rational>& rhs);

}  // namespace vassgames
