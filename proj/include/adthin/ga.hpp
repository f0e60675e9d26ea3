#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "adthin/afpa.hpp"
#include "adthin/autocorr.hpp"
#include "adthin/mask.hpp"
#include "adthin/pattern.hpp"
#include "adthin/sequence.hpp"

namespace adthin {

struct GaConfig {
    int population_size = 20;       ///< Q
    int max_iterations = 200;       ///< I
    int stagnation_window = 10;     ///< L; L >= I disables the stagnation check
    double stagnation_threshold = 1e-9;  ///< Phi_th
    double crossover_probability = 0.9;
    double mutation_probability = 0.0;   ///< per bit; 0 = default 1/P
    int tournament_size = 3;
    int elite_count = 1;
    std::uint64_t rng_seed = 1;
    int fixed_n = 0;  ///< constrain element count; 0 = unconstrained

    void validate(int p_count) const {
        if (population_size < 2) throw std::invalid_argument("GaConfig: population_size < 2");
        if (max_iterations < 1) throw std::invalid_argument("GaConfig: max_iterations < 1");
        if (stagnation_window < 1)
            throw std::invalid_argument("GaConfig: stagnation_window < 1");
        if (stagnation_threshold < 0.0)
            throw std::invalid_argument("GaConfig: negative stagnation_threshold");
        if (elite_count < 0 || elite_count >= population_size)
            throw std::invalid_argument("GaConfig: elite_count must be in [0, Q)");
        if (tournament_size < 2) throw std::invalid_argument("GaConfig: tournament_size < 2");
        if (fixed_n > p_count) throw std::invalid_argument("GaConfig: fixed_n > P");
    }

    double mutation_rate(int p_count) const {
        return mutation_probability > 0.0 ? mutation_probability : 1.0 / p_count;
    }
};

enum class Termination { MaxIterations, Stagnation };

struct RunTrace {
    std::vector<double> best_cost;  ///< Phi_i^best per iteration, non-increasing
    int convergence_iteration = 0;
    Termination reason = Termination::MaxIterations;
    double wall_time_seconds = 0.0;
    long long evaluations = 0;
};

struct SynthesisResult {
    ThinningSequence parent;   ///< best GA individual alpha-hat
    ThinningSequence layout;   ///< final layout alpha-opt (a cyclic shift of parent)
    int shift = 0;             ///< sigma*
    double cost = 0.0;         ///< Phi(parent)
    double mask_error = 0.0;   ///< xi(layout)
    double sidelobe_db = 0.0;
    RunTrace trace;
};

/// AD cost Phi = (1/P) sum_s |gamma_s(alpha) - gamma*_s|^2.
inline double cost_ad(const ThinningSequence& alpha, const AutocorrTarget& target) {
    if (alpha.size() != static_cast<int>(target.values.size()))
        throw std::invalid_argument("cost_ad: length mismatch");
    const auto gamma = autocorrelation(alpha);
    double acc = 0.0;
    for (std::size_t s = 0; s < target.values.size(); ++s) {
        const double d = static_cast<double>(gamma.values[s]) - target.values[s];
        acc += d * d;
    }
    return acc / alpha.size();
}

namespace detail {

/// Flip random bits toward exactly `n` ones; keeps the RNG stream deterministic.
inline void repair_count(ThinningSequence& alpha, int n, std::mt19937_64& rng) {
    int count = alpha.count();
    const int p_count = alpha.size();
    std::uniform_int_distribution<int> pick(0, p_count - 1);
    while (count != n) {
        const int p = pick(rng);
        auto& bit = alpha.bits[static_cast<std::size_t>(p)];
        if (count > n && bit) { bit = 0; --count; }
        else if (count < n && !bit) { bit = 1; ++count; }
    }
}

inline ThinningSequence random_sequence(int p_count, std::mt19937_64& rng) {
    ThinningSequence alpha;
    alpha.bits.resize(static_cast<std::size_t>(p_count));
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& b : alpha.bits) b = static_cast<std::uint8_t>(bit(rng));
    return alpha;
}

}  // namespace detail

/// Random initial population (per-bit fair coin), repaired to fixed_n ones
/// when the element count is constrained.
inline std::vector<ThinningSequence> initialize_me(const GaConfig& config, int p_count) {
    config.validate(p_count);
    std::mt19937_64 rng(config.rng_seed);
    std::vector<ThinningSequence> pop;
    pop.reserve(static_cast<std::size_t>(config.population_size));
    for (int q = 0; q < config.population_size; ++q) {
        auto alpha = detail::random_sequence(p_count, rng);
        if (config.fixed_n > 0) detail::repair_count(alpha, config.fixed_n, rng);
        pop.push_back(std::move(alpha));
    }
    return pop;
}

/// Population seeded from the auxiliary excitations: individual q rounds the
/// q-shifted weights (>= 0.5 -> occupied). Individuals past the first P are
/// random.
inline std::vector<ThinningSequence> initialize_fpe(const GaConfig& config,
                                                    const AuxExcitations& w) {
    const int p_count = static_cast<int>(w.weights.size());
    config.validate(p_count);
    std::mt19937_64 rng(config.rng_seed);
    std::vector<ThinningSequence> pop;
    pop.reserve(static_cast<std::size_t>(config.population_size));
    for (int q = 0; q < config.population_size; ++q) {
        ThinningSequence alpha;
        if (q < p_count) {
            alpha.bits.resize(static_cast<std::size_t>(p_count));
            for (int p = 0; p < p_count; ++p)
                alpha.bits[static_cast<std::size_t>(p)] =
                    w.weights[static_cast<std::size_t>((p + q) % p_count)] >= 0.5 ? 1 : 0;
        } else {
            alpha = detail::random_sequence(p_count, rng);
        }
        if (config.fixed_n > 0) detail::repair_count(alpha, config.fixed_n, rng);
        pop.push_back(std::move(alpha));
    }
    return pop;
}

/// Element count implied by the rounded auxiliary excitations; the natural
/// default N for the FPE pipeline.
inline int rounded_count(const AuxExcitations& w) {
    int n = 0;
    for (double x : w.weights) n += x >= 0.5 ? 1 : 0;
    return n;
}

/// Generational GA: tournament selection, single-point crossover, per-bit
/// mutation, elitism. Stops at max_iterations or when the best cost deviates
/// from its trailing-window average by at most the stagnation threshold
/// (checked once the window is fully populated). Returns the best-ever
/// individual.
template <typename CostFn>
std::pair<ThinningSequence, RunTrace> evolve(std::vector<ThinningSequence> population,
                                             CostFn&& cost, const GaConfig& config) {
    if (population.empty()) throw std::invalid_argument("evolve: empty population");
    const int p_count = population.front().size();
    config.validate(p_count);
    const auto t0 = std::chrono::steady_clock::now();

    std::mt19937_64 rng(config.rng_seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> any_index(0, static_cast<int>(population.size()) - 1);
    std::uniform_int_distribution<int> cut_point(1, p_count - 1);
    const double pm = config.mutation_rate(p_count);

    RunTrace trace;
    std::vector<double> costs(population.size());
    ThinningSequence best;
    double best_cost = std::numeric_limits<double>::infinity();

    auto evaluate_all = [&]() {
        for (std::size_t q = 0; q < population.size(); ++q) {
            costs[q] = cost(population[q]);
            ++trace.evaluations;
            if (costs[q] < best_cost) { best_cost = costs[q]; best = population[q]; }
        }
    };
    evaluate_all();

    auto tournament = [&]() -> const ThinningSequence& {
        int winner = any_index(rng);
        for (int t = 1; t < config.tournament_size; ++t) {
            const int rival = any_index(rng);
            if (costs[static_cast<std::size_t>(rival)] < costs[static_cast<std::size_t>(winner)])
                winner = rival;
        }
        return population[static_cast<std::size_t>(winner)];
    };

    int iteration = 0;
    for (iteration = 1; iteration <= config.max_iterations; ++iteration) {
        std::vector<ThinningSequence> next;
        next.reserve(population.size());
        if (config.elite_count > 0) {
            std::vector<std::size_t> order(population.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
            for (int e = 0; e < config.elite_count; ++e)
                next.push_back(population[order[static_cast<std::size_t>(e)]]);
        }
        while (static_cast<int>(next.size()) < config.population_size) {
            ThinningSequence child_a = tournament();
            ThinningSequence child_b = tournament();
            if (unit(rng) < config.crossover_probability) {
                const int cut = cut_point(rng);
                for (int p = cut; p < p_count; ++p)
                    std::swap(child_a.bits[static_cast<std::size_t>(p)],
                              child_b.bits[static_cast<std::size_t>(p)]);
            }
            for (ThinningSequence* child : {&child_a, &child_b}) {
                for (auto& bit : child->bits)
                    if (unit(rng) < pm) bit ^= 1;
                if (config.fixed_n > 0) detail::repair_count(*child, config.fixed_n, rng);
                if (static_cast<int>(next.size()) < config.population_size)
                    next.push_back(std::move(*child));
            }
        }
        population = std::move(next);
        evaluate_all();
        trace.best_cost.push_back(best_cost);

        // Stagnation: |Phi_l - mean of the previous L values| <= Phi_th.
        const int l = iteration;
        if (l > config.stagnation_window) {
            double mean = 0.0;
            for (int i = l - config.stagnation_window; i <= l - 1; ++i)
                mean += trace.best_cost[static_cast<std::size_t>(i - 1)];
            mean /= config.stagnation_window;
            if (std::abs(best_cost - mean) <= config.stagnation_threshold) {
                trace.reason = Termination::Stagnation;
                break;
            }
        }
    }
    trace.convergence_iteration = std::min(iteration, config.max_iterations);
    if (trace.convergence_iteration == config.max_iterations &&
        trace.reason != Termination::Stagnation)
        trace.reason = Termination::MaxIterations;
    trace.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {best, trace};
}

/// Scan all P cyclic shifts of the parent, evaluating the dense-grid mask
/// matching error once per shift; ties go to the smallest sigma.
struct ShiftSelection {
    ThinningSequence layout;
    int shift = 0;
    double mask_error = 0.0;
};

inline ShiftSelection post_ga_cyclic_shift(const ThinningSequence& parent, const Mask& mask,
                                           const GridSpec& grid,
                                           const ElementPattern& element = ElementPattern()) {
    const int p_count = grid.num_slots;
    PatternEvaluator eval(grid, dense_u_grid(p_count), element);
    ShiftSelection best;
    best.mask_error = std::numeric_limits<double>::infinity();
    for (int sigma = 0; sigma < p_count; ++sigma) {
        auto shifted = cyclic_shift(parent, sigma);
        const double xi = mask_matching_error(eval.evaluate(shifted), mask);
        if (xi < best.mask_error) {
            best.mask_error = xi;
            best.shift = sigma;
            best.layout = std::move(shifted);
        }
    }
    return best;
}

namespace detail {

inline SynthesisResult finish_synthesis(const ThinningSequence& parent, double parent_cost,
                                        RunTrace trace, const Mask& mask, const GridSpec& grid,
                                        bool apply_shift) {
    SynthesisResult result;
    result.parent = parent;
    result.cost = parent_cost;
    if (apply_shift) {
        auto sel = post_ga_cyclic_shift(parent, mask, grid);
        result.layout = std::move(sel.layout);
        result.shift = sel.shift;
        result.mask_error = sel.mask_error;
    } else {
        result.layout = parent;
        result.shift = 0;
        PatternEvaluator eval(grid, dense_u_grid(grid.num_slots));
        result.mask_error = mask_matching_error(eval.evaluate(result.layout), mask);
    }
    if (!mask.mainlobe_covers_all()) {
        PatternEvaluator eval(grid, dense_u_grid(grid.num_slots));
        result.sidelobe_db = sidelobe_level(eval.evaluate(result.layout), mask);
    }
    result.trace = std::move(trace);
    return result;
}

}  // namespace detail

/// Mask-equality synthesis: mask samples -> IDFT target -> GA -> shift scan.
inline SynthesisResult run_me_ad(const Mask& mask, const GridSpec& grid, int n_elements,
                                 GaConfig config) {
    if (n_elements < 1) throw std::invalid_argument("run_me_ad: N must be >= 1");
    if (config.fixed_n == 0) config.fixed_n = n_elements;
    const auto t0 = std::chrono::steady_clock::now();
    const auto target = target_me(sample_mask(mask, grid), n_elements);
    auto population = initialize_me(config, grid.num_slots);
    auto [parent, trace] = evolve(
        std::move(population),
        [&](const ThinningSequence& a) { return cost_ad(a, target); }, config);
    auto result = detail::finish_synthesis(parent, cost_ad(parent, target), std::move(trace),
                                           mask, grid, /*apply_shift=*/true);
    result.trace.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

/// Feasible-pattern-equality synthesis: auxiliary excitation design ->
/// feasible samples -> IDFT target -> seeded GA -> shift scan.
/// n_elements = 0 derives N from the rounded auxiliary excitations.
inline SynthesisResult run_fpe_ad(const Mask& mask, const GridSpec& grid, int n_elements,
                                  GaConfig config, const AfpaOptions& afpa = AfpaOptions()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto w = solve_afpa(mask, grid, afpa);
    const int n = n_elements > 0 ? n_elements : rounded_count(w);
    if (n < 1) throw std::invalid_argument("run_fpe_ad: derived N < 1");
    if (config.fixed_n == 0) config.fixed_n = n;
    const auto target = target_fpe(feasible_samples(w, grid), n);
    auto population = initialize_fpe(config, w);
    auto [parent, trace] = evolve(
        std::move(population),
        [&](const ThinningSequence& a) { return cost_ad(a, target); }, config);
    auto result = detail::finish_synthesis(parent, cost_ad(parent, target), std::move(trace),
                                           mask, grid, /*apply_shift=*/true);
    result.trace.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace adthin
