#include "core/simplex.hpp"

#include <cassert>

namespace nsb {

std::optional<std::vector<Rat>> solve_feasible(const std::vector<std::vector<Rat>>& A,
                                               const std::vector<Rat>& b) {
    const int m = static_cast<int>(A.size());
    const int n = m > 0 ? static_cast<int>(A[0].size()) : 0;
    assert(static_cast<int>(b.size()) == m);

    // Tableau over columns [original | artificial | rhs], rhs made nonnegative
    // by row negation so the artificial basis starts feasible.
    std::vector<std::vector<Rat>> t(m, std::vector<Rat>(n + m + 1));
    for (int i = 0; i < m; ++i) {
        bool neg = b[i] < 0;
        for (int j = 0; j < n; ++j) t[i][j] = neg ? Rat(-A[i][j]) : A[i][j];
        t[i][n + i] = 1;
        t[i][n + m] = neg ? Rat(-b[i]) : b[i];
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    const auto cost = [&](int col) { return col >= n ? 1 : 0; };

    for (;;) {
        // Bland's rule: smallest column with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < n + m && enter < 0; ++j) {
            Rat z = 0;
            for (int i = 0; i < m; ++i)
                if (cost(basis[i])) z += t[i][j];
            if (Rat(cost(j)) - z < 0) enter = j;
        }
        if (enter < 0) break;

        // Ratio test; ties broken by smallest basis variable, again Bland.
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][n + m] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) return std::nullopt;  // unbounded cannot happen in phase one

        Rat piv = t[leave][enter];
        for (int j = 0; j <= n + m; ++j) t[leave][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    Rat objective = 0;
    for (int i = 0; i < m; ++i)
        if (cost(basis[i])) objective += t[i][n + m];
    if (objective != 0) return std::nullopt;

    std::vector<Rat> x(n);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][n + m];
    return x;
}

}  // namespace nsb
