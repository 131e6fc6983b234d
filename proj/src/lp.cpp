#include "vassgames/lp.hpp"

#include <stdexcept>

namespace vassgames {

std::optional<std::vector<Rational>> find_nonnegative_solution(const std::vector<std::vector<Rational>>& rows,
                                                               const std::vector<Rational>& rhs) {
    const std::size_t m = rows.size();
    if (rhs.size() != m) throw std::invalid_argument("rhs size mismatch");
    const std::size_t n = m ? rows.front().size() : 0;
    if (m == 0) return std::vector<Rational>{};

    // Tableau columns: n structural, m artificial, then the right-hand side.
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, 0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("ragged constraint matrix");
        const int sign = rhs[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * rows[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = sign * rhs[i];
        basis[i] = n + i;
    }
    // Reduced costs for minimizing the sum of artificials.
    std::vector<Rational> cost(cols, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (j < n || j == cols - 1) cost[j] -= t[i][j];

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction; cannot happen for phase one

        const Rational pivot = t[leave][enter];
        for (auto& x : t[leave]) x /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j < cols; ++j) cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    // cost[rhs] holds minus the remaining artificial mass.
    if (cost[cols - 1] != 0) return std::nullopt;
    std::vector<Rational> x(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][cols - 1];
    return x;
}

}  // namespace vassgames
