#pragma once

#include <chrono>
#include <stdexcept>

#include "adthin/ga.hpp"
#include "adthin/mask.hpp"
#include "adthin/pattern.hpp"
#include "adthin/sequence.hpp"

namespace adthin {

/// Pattern-domain cost: the dense-grid mask matching error itself.
/// Shares the pattern module's code path exactly.
inline double cost_pd(const ThinningSequence& alpha, const PatternEvaluator& evaluator,
                      const Mask& mask) {
    return mask_matching_error(evaluator.evaluate(alpha), mask);
}

inline double cost_pd(const ThinningSequence& alpha, const Mask& mask, const GridSpec& grid) {
    PatternEvaluator evaluator(grid, dense_u_grid(grid.num_slots));
    return cost_pd(alpha, evaluator, mask);
}

/// Traditional pattern-domain GA baseline: same engine and operators as the
/// AD runs, fitness is xi directly, and there is no post-GA shift step
/// (shifted sequences are not cost-equivalent in the PD).
inline SynthesisResult run_pd(const Mask& mask, const GridSpec& grid, int n_elements,
                              GaConfig config) {
    if (n_elements < 1) throw std::invalid_argument("run_pd: N must be >= 1");
    if (config.fixed_n == 0) config.fixed_n = n_elements;
    const auto t0 = std::chrono::steady_clock::now();
    PatternEvaluator evaluator(grid, dense_u_grid(grid.num_slots));
    auto population = initialize_me(config, grid.num_slots);
    auto [parent, trace] = evolve(
        std::move(population),
        [&](const ThinningSequence& a) { return cost_pd(a, evaluator, mask); }, config);
    auto result = detail::finish_synthesis(parent, cost_pd(parent, evaluator, mask),
                                           std::move(trace), mask, grid, /*apply_shift=*/false);
    result.trace.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace adthin
