#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "adthin/grid.hpp"
#include "adthin/lp.hpp"
#include "adthin/mask.hpp"

namespace adthin {

/// Real excitations of the auxiliary fully-populated array. Symmetric
/// (w_p = w_{P-1-p}) and normalized so the largest weight is 1.
struct AuxExcitations {
    std::vector<double> weights;
};

/// Raised when no non-trivial symmetric excitation satisfies the mask.
class AfpaInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AfpaOptions {
    int constraint_grid_size = 0;  ///< 0 = default 10*P points outside the mainlobe
    double margin = 0.02;          ///< amplitude backoff keeping the pattern under the
                                   ///< mask between constraint points
};

namespace detail {

/// Constraint abscissas: `count` points spread over the sidelobe region
/// proportionally to segment length, plus every mask breakpoint there.
inline std::vector<double> afpa_constraint_points(const Mask& mask, int count) {
    std::vector<std::pair<double, double>> side;  // sidelobe intervals
    const auto ml = mask.mainlobe();
    if (ml.first > -1.0 + 1e-12) side.emplace_back(-1.0, ml.first);
    if (ml.second < 1.0 - 1e-12) side.emplace_back(ml.second, 1.0);
    std::vector<double> pts;
    double total = 0.0;
    for (const auto& iv : side) total += iv.second - iv.first;
    for (const auto& iv : side) {
        const int n = std::max(2, static_cast<int>(std::lround(count * (iv.second - iv.first) / total)));
        for (int i = 0; i <= n; ++i)
            pts.push_back(iv.first + (iv.second - iv.first) * i / n);
    }
    for (const auto& seg : mask.segments()) {
        for (double u : {seg.u_start, seg.u_end}) {
            if (u > ml.first + 1e-12 && u < ml.second - 1e-12) continue;
            pts.push_back(u);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              pts.end());
    return pts;
}

}  // namespace detail

/// Mask-constrained excitation design for the fully-populated array:
/// maximize the broadside response over symmetric real weights in [0, 1],
/// subject to |AF(u_i)| <= sqrt(M(u_i)) * AF(0) on the constraint grid.
/// With the symmetry restriction the array factor is real and the problem
/// is a linear program.
inline AuxExcitations solve_afpa(const Mask& mask, const GridSpec& grid,
                                 const AfpaOptions& options = AfpaOptions()) {
    const int p_count = grid.num_slots;
    if (!mask.in_mainlobe(0.0))
        throw std::invalid_argument("solve_afpa: mask mainlobe must include u=0");

    const int half = (p_count + 1) / 2;
    const auto d = candidate_positions(grid);
    std::vector<double> mult(static_cast<std::size_t>(half), 2.0);
    if (p_count % 2 == 1) mult[static_cast<std::size_t>(half - 1)] = 1.0;

    const int grid_size =
        options.constraint_grid_size > 0 ? options.constraint_grid_size : 10 * p_count;
    const auto u_pts =
        mask.mainlobe_covers_all() ? std::vector<double>{}
                                   : detail::afpa_constraint_points(mask, grid_size);

    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(2 * u_pts.size() + static_cast<std::size_t>(half));
    for (double u : u_pts) {
        const double bound = (1.0 - options.margin) * std::sqrt(mask.level_linear(u));
        std::vector<double> upper(static_cast<std::size_t>(half));
        std::vector<double> lower(static_cast<std::size_t>(half));
        for (int j = 0; j < half; ++j) {
            const std::size_t js = static_cast<std::size_t>(j);
            const double c = mult[js] * std::cos(2.0 * M_PI * d[js] * u);
            upper[js] = c - bound * mult[js];    //  AF(u) - bound * AF(0) <= 0
            lower[js] = -c - bound * mult[js];   // -AF(u) - bound * AF(0) <= 0
        }
        // Tiny increasing slacks break the total degeneracy of the
        // homogeneous constraint set (every row is active at w = 0).
        a.push_back(std::move(upper));
        b.push_back(1e-9 * static_cast<double>(b.size() + 1));
        a.push_back(std::move(lower));
        b.push_back(1e-9 * static_cast<double>(b.size() + 1));
    }
    for (int j = 0; j < half; ++j) {  // w_j <= 1
        std::vector<double> row(static_cast<std::size_t>(half), 0.0);
        row[static_cast<std::size_t>(j)] = 1.0;
        a.push_back(std::move(row));
        b.push_back(1.0);
    }
    std::vector<double> c(mult.begin(), mult.end());  // broadside response AF(0)

    // A feasible cone always scales to peak weight 1 (objective >= 1); only
    // the perturbation slack can produce smaller positive objectives.
    const auto sol = SimplexSolver::maximize(a, b, c);
    if (sol.objective <= 1e-4)
        throw AfpaInfeasible("solve_afpa: mask admits no radiating symmetric excitation");

    AuxExcitations out;
    out.weights.resize(static_cast<std::size_t>(p_count));
    double peak = 0.0;
    for (int p = 0; p < p_count; ++p) {
        const int j = std::min(p, p_count - 1 - p);
        out.weights[static_cast<std::size_t>(p)] = sol.x[static_cast<std::size_t>(j)];
        peak = std::max(peak, std::abs(sol.x[static_cast<std::size_t>(j)]));
    }
    for (double& w : out.weights) w /= peak;

    // Near the feasibility boundary the perturbation slack can admit a tiny
    // solution whose normalization no longer respects the mask; verify the
    // scaled weights against the constraint points directly.
    double af0 = 0.0;
    for (int j = 0; j < half; ++j)
        af0 += mult[static_cast<std::size_t>(j)] * out.weights[static_cast<std::size_t>(j)];
    for (double u : u_pts) {
        double af = 0.0;
        for (int j = 0; j < half; ++j)
            af += mult[static_cast<std::size_t>(j)] * out.weights[static_cast<std::size_t>(j)] *
                  std::cos(2.0 * M_PI * d[static_cast<std::size_t>(j)] * u);
        const double bound = (1.0 - options.margin) * std::sqrt(mask.level_linear(u)) * af0;
        if (std::abs(af) > bound + 1e-6 * af0)
            throw AfpaInfeasible("solve_afpa: mask admits no radiating symmetric excitation");
    }
    return out;
}

/// Normalized auxiliary-pattern samples E^feas_k = E(u_k; w) / E(0; w).
inline std::vector<double> feasible_samples(const AuxExcitations& w, const GridSpec& grid) {
    const int p_count = grid.num_slots;
    if (static_cast<int>(w.weights.size()) != p_count)
        throw std::invalid_argument("feasible_samples: weights/grid size mismatch");
    double sum = 0.0;
    for (double x : w.weights) sum += x;
    if (sum == 0.0) throw std::invalid_argument("feasible_samples: zero broadside response");
    const auto d = candidate_positions(grid);
    std::vector<double> out(static_cast<std::size_t>(p_count));
    for (int k = 0; k < p_count; ++k) {
        const double u = sample_u(grid, k);
        double re = 0.0, im = 0.0;
        for (int p = 0; p < p_count; ++p) {
            const double ph = 2.0 * M_PI * d[static_cast<std::size_t>(p)] * u;
            re += w.weights[static_cast<std::size_t>(p)] * std::cos(ph);
            im += w.weights[static_cast<std::size_t>(p)] * std::sin(ph);
        }
        out[static_cast<std::size_t>(k)] = (re * re + im * im) / (sum * sum);
    }
    return out;
}

}  // namespace adthin
