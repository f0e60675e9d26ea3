#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "adthin/autocorr.hpp"
#include "adthin/ga.hpp"
#include "adthin/mask.hpp"
#include "adthin/pattern.hpp"
#include "adthin/pd.hpp"
#include "adthin/sequence.hpp"

namespace adthin {

/// Naive double-loop cyclic autocorrelation, kept deliberately independent
/// of the main implementation as a cross-check reference.
inline Autocorrelation brute_autocorrelation(const ThinningSequence& alpha) {
    const int p_count = alpha.size();
    Autocorrelation out;
    out.values.assign(static_cast<std::size_t>(p_count), 0);
    for (int s = 0; s < p_count; ++s) {
        long long acc = 0;
        for (int p = 0; p < p_count; ++p) {
            int q = p + s;
            while (q >= p_count) q -= p_count;
            acc += static_cast<long long>(alpha.bits[static_cast<std::size_t>(p)]) *
                   static_cast<long long>(alpha.bits[static_cast<std::size_t>(q)]);
        }
        out.values[static_cast<std::size_t>(s)] = acc;
    }
    return out;
}

enum class LandscapeObjective { PD, AD };

struct LandscapeOptions {
    LandscapeObjective objective = LandscapeObjective::AD;
    const AutocorrTarget* target = nullptr;  ///< required for AD
    int n_filter = -1;                       ///< restrict to exactly N ones; -1 = off
    double bin_width = 1e-3;
    std::size_t max_witnesses = 4096;
    std::function<void(std::uint64_t, std::uint64_t)> progress;  ///< every 2^20 sequences
};

struct LandscapeResult {
    std::map<double, std::uint64_t> raw_counts;    ///< exact cost -> count
    std::map<double, double> histogram;            ///< bin lower edge -> relative frequency
    double min_cost = std::numeric_limits<double>::infinity();
    double max_cost = -std::numeric_limits<double>::infinity();
    std::uint64_t evaluated = 0;
    std::vector<ThinningSequence> witnesses;       ///< sequences attaining min_cost
};

/// Exhaustive sweep of all 2^P sequences for small P: cost histogram, global
/// minimum, and the witness set. PD exhaustion is capped harder than AD
/// because of the dense-grid evaluation per sequence.
inline LandscapeResult exhaust_landscape(const GridSpec& grid, const Mask& mask,
                                         const LandscapeOptions& options) {
    const int p_count = grid.num_slots;
    const int cap = options.objective == LandscapeObjective::PD ? 16 : 24;
    if (p_count > cap)
        throw std::invalid_argument("exhaust_landscape: P exceeds cap for this objective");
    if (options.objective == LandscapeObjective::AD && options.target == nullptr)
        throw std::invalid_argument("exhaust_landscape: AD objective needs a target");

    PatternEvaluator evaluator(grid, dense_u_grid(p_count));
    LandscapeResult result;
    const std::uint64_t total = 1ULL << p_count;
    ThinningSequence alpha;
    alpha.bits.resize(static_cast<std::size_t>(p_count));

    for (std::uint64_t h = 0; h < total; ++h) {
        if (options.progress && (h & 0xFFFFFULL) == 0) options.progress(h, total);
        int n = 0;
        for (int p = 0; p < p_count; ++p) {
            const std::uint8_t bit = static_cast<std::uint8_t>((h >> p) & 1ULL);
            alpha.bits[static_cast<std::size_t>(p)] = bit;
            n += bit;
        }
        if (options.n_filter >= 0 && n != options.n_filter) continue;
        if (n == 0 && options.objective == LandscapeObjective::PD) continue;

        const double cost = options.objective == LandscapeObjective::AD
                                ? cost_ad(alpha, *options.target)
                                : cost_pd(alpha, evaluator, mask);
        ++result.evaluated;
        ++result.raw_counts[cost];
        if (cost < result.min_cost - 1e-12) {
            result.min_cost = cost;
            result.witnesses.clear();
        }
        if (cost <= result.min_cost + 1e-12 && result.witnesses.size() < options.max_witnesses)
            result.witnesses.push_back(alpha);
        result.max_cost = std::max(result.max_cost, cost);
    }

    for (const auto& [cost, count] : result.raw_counts) {
        const double bin = std::floor(cost / options.bin_width) * options.bin_width;
        result.histogram[bin] += static_cast<double>(count) / result.evaluated;
    }
    return result;
}

/// Count of distinct sequences whose cost falls within the lowest `fraction`
/// quantile of the cost distribution, excluding exact optima. The quantile is
/// taken by rank over every evaluated sequence, so the measure compares tie
/// structure near the optimum rather than absolute cost scales. The
/// near-optimum congestion measure used to compare PD and AD landscapes.
inline std::uint64_t near_optimal_count(const LandscapeResult& result, double fraction) {
    const auto rank = static_cast<std::uint64_t>(fraction * result.evaluated);
    double threshold = result.min_cost;
    std::uint64_t cumulative = 0;
    for (const auto& [cost, n] : result.raw_counts) {  // std::map: ascending cost
        cumulative += n;
        threshold = cost;
        if (cumulative >= rank) break;
    }
    std::uint64_t count = 0;
    for (const auto& [cost, n] : result.raw_counts) {
        if (cost <= result.min_cost + 1e-12) continue;  // exact optima excluded
        if (cost <= threshold) count += n;
    }
    return count;
}

}  // namespace adthin
