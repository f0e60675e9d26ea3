#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adthin/ga.hpp"

using namespace adthin;

namespace {

AutocorrTarget target_of(const ThinningSequence& alpha) {
    AutocorrTarget t;
    t.kind = TargetKind::ME;
    for (auto g : autocorrelation(alpha).values) t.values.push_back(static_cast<double>(g));
    return t;
}

}  // namespace

TEST_CASE("config validation") {
    GaConfig config;
    REQUIRE_NOTHROW(config.validate(16));
    auto bad = config;
    bad.population_size = 1;
    REQUIRE_THROWS_AS(bad.validate(16), std::invalid_argument);
    bad = config;
    bad.elite_count = config.population_size;
    REQUIRE_THROWS_AS(bad.validate(16), std::invalid_argument);
    bad = config;
    bad.fixed_n = 17;
    REQUIRE_THROWS_AS(bad.validate(16), std::invalid_argument);
    bad = config;
    bad.tournament_size = 1;
    REQUIRE_THROWS_AS(bad.validate(16), std::invalid_argument);
    bad = config;
    bad.stagnation_threshold = -1.0;
    REQUIRE_THROWS_AS(bad.validate(16), std::invalid_argument);

    REQUIRE(config.mutation_rate(20) == Catch::Approx(0.05));
    config.mutation_probability = 0.125;
    REQUIRE(config.mutation_rate(20) == Catch::Approx(0.125));
}

TEST_CASE("AD cost reference values") {
    const ThinningSequence alpha{1, 1, 0, 1};
    REQUIRE(cost_ad(alpha, target_of(alpha)) == 0.0);

    AutocorrTarget spike;
    spike.values = {3.0, 0.0, 0.0, 0.0};
    REQUIRE(cost_ad(alpha, spike) == Catch::Approx(3.0));  // (0 + 4 + 4 + 4) / 4

    AutocorrTarget wrong_len;
    wrong_len.values = {3.0, 0.0};
    REQUIRE_THROWS_AS(cost_ad(alpha, wrong_len), std::invalid_argument);
}

TEST_CASE("AD cost is invariant under cyclic shifts") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const int p_count = 6 + static_cast<int>(rng() % 20);
        ThinningSequence alpha, ref;
        for (int p = 0; p < p_count; ++p) {
            alpha.bits.push_back(bit(rng));
            ref.bits.push_back(bit(rng));
        }
        const auto target = target_of(ref);
        const double base = cost_ad(alpha, target);
        for (int sigma = 1; sigma < p_count; ++sigma)
            REQUIRE(cost_ad(cyclic_shift(alpha, sigma), target) == Catch::Approx(base));
    }
}

TEST_CASE("count repair reaches the requested number of ones") {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        ThinningSequence alpha;
        for (int p = 0; p < 20; ++p) alpha.bits.push_back(bit(rng));
        const int n = 1 + static_cast<int>(rng() % 19);
        detail::repair_count(alpha, n, rng);
        REQUIRE(alpha.count() == n);
    }
}

TEST_CASE("random initialization") {
    GaConfig config;
    config.population_size = 30;
    config.rng_seed = 99;
    const auto pop = initialize_me(config, 24);
    REQUIRE(pop.size() == 30);
    for (const auto& alpha : pop) REQUIRE(alpha.size() == 24);
    REQUIRE(initialize_me(config, 24) == pop);  // deterministic in the seed
    config.rng_seed = 100;
    REQUIRE(initialize_me(config, 24) != pop);

    config.fixed_n = 9;
    for (const auto& alpha : initialize_me(config, 24)) REQUIRE(alpha.count() == 9);
}

TEST_CASE("seeded initialization rounds the shifted excitations") {
    AuxExcitations w;
    w.weights = {1.0, 0.8, 0.4, 0.1, 0.4, 0.8};
    GaConfig config;
    config.population_size = 10;
    config.rng_seed = 5;
    const auto pop = initialize_fpe(config, w);
    REQUIRE(pop.size() == 10);
    REQUIRE(pop[0] == ThinningSequence{1, 1, 0, 0, 0, 1});
    REQUIRE(pop[1] == ThinningSequence{1, 0, 0, 0, 1, 1});
    REQUIRE(pop[2] == ThinningSequence{0, 0, 0, 1, 1, 1});
    for (const auto& alpha : pop) REQUIRE(alpha.size() == 6);

    REQUIRE(rounded_count(w) == 3);
}

TEST_CASE("evolution is deterministic and monotone in the best cost") {
    const ThinningSequence planted{1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0, 0};
    const auto target = target_of(planted);
    GaConfig config;
    config.population_size = 20;
    config.max_iterations = 60;
    config.stagnation_window = 60;  // disable stagnation
    config.rng_seed = 7;
    config.fixed_n = planted.count();
    auto fitness = [&](const ThinningSequence& a) { return cost_ad(a, target); };

    const auto [best_a, trace_a] = evolve(initialize_me(config, 12), fitness, config);
    const auto [best_b, trace_b] = evolve(initialize_me(config, 12), fitness, config);
    REQUIRE(best_a == best_b);
    REQUIRE(trace_a.best_cost == trace_b.best_cost);

    for (std::size_t i = 1; i < trace_a.best_cost.size(); ++i)
        REQUIRE(trace_a.best_cost[i] <= trace_a.best_cost[i - 1]);
    REQUIRE(trace_a.evaluations ==
            static_cast<long long>(config.population_size) *
                (1 + static_cast<long long>(trace_a.best_cost.size())));
    REQUIRE(cost_ad(best_a, target) == trace_a.best_cost.back());
}

TEST_CASE("evolution recovers an easy planted target") {
    const ThinningSequence planted{1, 0, 1, 1, 0, 0, 1, 0, 1, 1};
    const auto target = target_of(planted);
    GaConfig config;
    config.population_size = 40;
    config.max_iterations = 200;
    config.stagnation_window = 200;
    config.rng_seed = 11;
    config.fixed_n = planted.count();
    const auto [best, trace] = evolve(
        initialize_me(config, 10),
        [&](const ThinningSequence& a) { return cost_ad(a, target); }, config);
    REQUIRE(cost_ad(best, target) == 0.0);
    REQUIRE(best.count() == planted.count());
}

TEST_CASE("termination reasons") {
    const ThinningSequence planted{1, 1, 0, 1, 0, 0, 1, 0};
    const auto target = target_of(planted);
    auto fitness = [&](const ThinningSequence& a) { return cost_ad(a, target); };

    GaConfig config;
    config.population_size = 10;
    config.max_iterations = 100;
    config.rng_seed = 3;

    SECTION("generous threshold stagnates early") {
        config.stagnation_window = 5;
        config.stagnation_threshold = 1e9;
        const auto [best, trace] = evolve(initialize_me(config, 8), fitness, config);
        REQUIRE(trace.reason == Termination::Stagnation);
        REQUIRE(trace.convergence_iteration == 6);  // first checked iteration
    }
    SECTION("window covering the whole run never stagnates") {
        config.stagnation_window = 100;
        config.stagnation_threshold = 0.0;
        const auto [best, trace] = evolve(initialize_me(config, 8), fitness, config);
        REQUIRE(trace.reason == Termination::MaxIterations);
        REQUIRE(trace.convergence_iteration == 100);
        REQUIRE(trace.best_cost.size() == 100);
    }
}

TEST_CASE("fixed element count is preserved through evolution") {
    const GridSpec grid(16, 0.5);
    const auto target = target_me(sample_mask(flat_mask(16, -15.0, 2.0 / 16), grid), 8);
    GaConfig config;
    config.population_size = 12;
    config.max_iterations = 20;
    config.rng_seed = 21;
    config.fixed_n = 8;
    const auto [best, trace] = evolve(
        initialize_me(config, 16),
        [&](const ThinningSequence& a) {
            REQUIRE(a.count() == 8);
            return cost_ad(a, target);
        },
        config);
    REQUIRE(best.count() == 8);
}

TEST_CASE("shift scan picks the best mask matching error") {
    const GridSpec grid(16, 0.5);
    const auto mask = flat_mask(16, -15.0, 2.0 / 16);
    const ThinningSequence parent{1, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0};
    const auto sel = post_ga_cyclic_shift(parent, mask, grid);
    REQUIRE(sel.layout == cyclic_shift(parent, sel.shift));

    PatternEvaluator eval(grid, dense_u_grid(16));
    for (int sigma = 0; sigma < 16; ++sigma) {
        const double xi = mask_matching_error(eval.evaluate(cyclic_shift(parent, sigma)), mask);
        REQUIRE(sel.mask_error <= xi + 1e-15);
        if (sigma < sel.shift) REQUIRE(xi > sel.mask_error);  // ties go to the smallest shift
    }
}

TEST_CASE("shift scan on a shift-invariant layout returns sigma 0") {
    const GridSpec grid(12, 0.5);
    ThinningSequence full;
    full.bits.assign(12, 1);
    const auto sel = post_ga_cyclic_shift(full, flat_mask(12, -10.0, 2.0 / 12), grid);
    REQUIRE(sel.shift == 0);
}

TEST_CASE("mask-equality synthesis end to end") {
    const GridSpec grid(16, 0.5);
    const auto mask = flat_mask(16, -12.0, 2.0 / 16);
    GaConfig config;
    config.population_size = 20;
    config.max_iterations = 80;
    config.stagnation_window = 80;
    config.rng_seed = 31;
    const auto result = run_me_ad(mask, grid, 8, config);

    REQUIRE(result.parent.count() == 8);
    REQUIRE(result.layout == cyclic_shift(result.parent, result.shift));
    REQUIRE(result.cost == Catch::Approx(result.trace.best_cost.back()));

    PatternEvaluator eval(grid, dense_u_grid(16));
    const auto curve = eval.evaluate(result.layout);
    REQUIRE(result.mask_error == Catch::Approx(mask_matching_error(curve, mask)));
    REQUIRE(result.sidelobe_db == Catch::Approx(sidelobe_level(curve, mask)));
    REQUIRE(result.trace.wall_time_seconds > 0.0);

    REQUIRE_THROWS_AS(run_me_ad(mask, grid, 0, config), std::invalid_argument);
}

TEST_CASE("feasible-pattern synthesis end to end") {
    const GridSpec grid(24, 0.5);
    const auto mask = tapered_mask(24);
    GaConfig config;
    config.population_size = 24;
    config.max_iterations = 60;
    config.stagnation_window = 60;
    config.rng_seed = 41;

    const auto result = run_fpe_ad(mask, grid, 0, config);
    const int derived = rounded_count(solve_afpa(mask, grid));
    REQUIRE(result.parent.count() == derived);
    REQUIRE(result.layout == cyclic_shift(result.parent, result.shift));
    REQUIRE(result.layout.count() == derived);

    GaConfig fixed = config;
    const auto result12 = run_fpe_ad(mask, grid, 12, fixed);
    REQUIRE(result12.layout.count() == 12);
}
