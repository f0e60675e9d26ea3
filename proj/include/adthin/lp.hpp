#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace adthin {

/// Dense primal simplex for problems of the form
///   maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0,
/// so the slack basis is immediately feasible. Dantzig pricing with a
/// switch to Bland's rule after a degeneracy budget, which is enough for
/// the small, heavily degenerate tableaus produced by the mask constraints.
class SimplexSolver {
public:
    struct Solution {
        std::vector<double> x;
        double objective = 0.0;
    };

    static Solution maximize(const std::vector<std::vector<double>>& a,
                             const std::vector<double>& b, const std::vector<double>& c,
                             int max_iterations = 200000) {
        const std::size_t m = a.size();
        const std::size_t n = c.size();
        for (double bi : b)
            if (bi < 0.0) throw std::invalid_argument("SimplexSolver: b must be non-negative");

        const std::size_t cols = n + m + 1;  // structural + slack + rhs
        std::vector<std::vector<double>> tab(m + 1, std::vector<double>(cols, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) tab[i][j] = a[i][j];
            tab[i][n + i] = 1.0;
            tab[i][cols - 1] = b[i];
        }
        for (std::size_t j = 0; j < n; ++j) tab[m][j] = -c[j];  // objective row

        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

        const double eps = 1e-10;
        int stalled = 0;
        bool bland = false;
        for (int iter = 0; iter < max_iterations; ++iter) {
            // Entering column.
            std::size_t pivot_col = cols;
            if (!bland) {
                double best = -eps;
                for (std::size_t j = 0; j + 1 < cols; ++j)
                    if (tab[m][j] < best) { best = tab[m][j]; pivot_col = j; }
            } else {
                for (std::size_t j = 0; j + 1 < cols; ++j)
                    if (tab[m][j] < -eps) { pivot_col = j; break; }
            }
            if (pivot_col == cols) return extract(tab, basis, n, m, cols);

            // Ratio test.
            std::size_t pivot_row = m;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (tab[i][pivot_col] <= eps) continue;
                const double ratio = tab[i][cols - 1] / tab[i][pivot_col];
                if (pivot_row == m || ratio < best_ratio - eps ||
                    (ratio < best_ratio + eps && basis[i] < basis[pivot_row]))
                    { pivot_row = i; best_ratio = ratio; }
            }
            if (pivot_row == m) throw std::runtime_error("SimplexSolver: unbounded problem");

            if (best_ratio < eps) {
                if (++stalled > 500) bland = true;
            } else {
                stalled = 0;
            }
            pivot(tab, pivot_row, pivot_col, m, cols);
            basis[pivot_row] = pivot_col;
        }
        throw std::runtime_error("SimplexSolver: iteration limit reached");
    }

private:
    static void pivot(std::vector<std::vector<double>>& tab, std::size_t row, std::size_t col,
                      std::size_t m, std::size_t cols) {
        const double inv = 1.0 / tab[row][col];
        for (std::size_t j = 0; j < cols; ++j) tab[row][j] *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == row) continue;
            const double f = tab[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) tab[i][j] -= f * tab[row][j];
        }
    }

    static Solution extract(const std::vector<std::vector<double>>& tab,
                            const std::vector<std::size_t>& basis, std::size_t n, std::size_t m,
                            std::size_t cols) {
        Solution sol;
        sol.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) sol.x[basis[i]] = tab[i][cols - 1];
        sol.objective = tab[m][cols - 1];
        return sol;
    }
};

}  // namespace adthin
