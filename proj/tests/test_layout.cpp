#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "adthin/grid.hpp"
#include "adthin/mask.hpp"
#include "adthin/sequence.hpp"

using namespace adthin;

TEST_CASE("candidate positions follow the centered grid") {
    auto d2 = candidate_positions(GridSpec(2, 0.5));
    REQUIRE(d2[0] == Catch::Approx(-0.25));
    REQUIRE(d2[1] == Catch::Approx(0.25));

    auto d3 = candidate_positions(GridSpec(3, 0.5));
    REQUIRE(d3[0] == Catch::Approx(-0.5));
    REQUIRE(d3[1] == Catch::Approx(0.0));
    REQUIRE(d3[2] == Catch::Approx(0.5));

    auto d16 = candidate_positions(GridSpec(16, 0.5));
    REQUIRE(d16.front() == Catch::Approx(-3.75));
    REQUIRE(d16.back() == Catch::Approx(3.75));

    // symmetric about the origin
    for (std::size_t p = 0; p < d16.size(); ++p)
        REQUIRE(d16[p] == Catch::Approx(-d16[d16.size() - 1 - p]));
}

TEST_CASE("grid validation") {
    REQUIRE_THROWS_AS(GridSpec(1, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(GridSpec(8, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(GridSpec(8, -0.1), std::invalid_argument);
}

TEST_CASE("cyclic shift") {
    ThinningSequence alpha{1, 1, 0, 1};
    REQUIRE(cyclic_shift(alpha, 0) == alpha);
    REQUIRE(cyclic_shift(alpha, 1) == ThinningSequence{1, 0, 1, 1});
    REQUIRE_THROWS_AS(cyclic_shift(alpha, 4), std::out_of_range);
    REQUIRE_THROWS_AS(cyclic_shift(alpha, -1), std::out_of_range);
}

TEST_CASE("cyclic shift properties") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const int p_count = 4 + static_cast<int>(rng() % 20);
        ThinningSequence alpha;
        for (int p = 0; p < p_count; ++p) alpha.bits.push_back(bit(rng));
        const int s1 = static_cast<int>(rng() % p_count);
        const int s2 = static_cast<int>(rng() % p_count);
        REQUIRE(cyclic_shift(alpha, s1).count() == alpha.count());
        REQUIRE(cyclic_shift(cyclic_shift(alpha, s1), s2) ==
                cyclic_shift(alpha, (s1 + s2) % p_count));
    }
}

TEST_CASE("hamming distance") {
    REQUIRE(hamming_distance({1, 1, 0, 1}, {1, 1, 0, 1}) == 0);
    REQUIRE(hamming_distance({1, 1, 0, 1}, {1, 0, 1, 1}) == 2);
    REQUIRE(hamming_distance({0, 0, 0, 0}, {1, 1, 1, 1}) == 4);
    REQUIRE_THROWS_AS(hamming_distance({1, 0}, {1, 0, 1}), std::invalid_argument);
}

TEST_CASE("hamming distance is a metric") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const int p_count = 8;
        ThinningSequence a, b, c;
        for (int p = 0; p < p_count; ++p) {
            a.bits.push_back(bit(rng));
            b.bits.push_back(bit(rng));
            c.bits.push_back(bit(rng));
        }
        REQUIRE(hamming_distance(a, b) == hamming_distance(b, a));
        REQUIRE((hamming_distance(a, b) == 0) == (a == b));
        REQUIRE(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
    }
}

TEST_CASE("flat mask sampling with aliasing") {
    const GridSpec grid(16, 0.5);
    const auto mask = flat_mask(16, -15.0);
    const auto samples = sample_mask(mask, grid);
    REQUIRE(samples.values[0] == Catch::Approx(1.0));
    // k=1 -> u=0.125, outside the 1/16 mainlobe
    REQUIRE(samples.values[1] == Catch::Approx(std::pow(10.0, -1.5)));
    // k=8 -> u=1.0, aliased to -1.0
    REQUIRE(samples.values[8] == Catch::Approx(std::pow(10.0, -1.5)));
    for (double v : samples.values) REQUIRE(v > 0.0);
}

TEST_CASE("mask sampling is invariant under segment refinement") {
    const GridSpec grid(24, 0.5);
    const auto coarse = flat_mask(24, -15.0);
    // same envelope, sidelobe region split into extra pieces
    const double hw = 1.0 / 24;
    const Mask fine({{-1.0, -0.5, -15.0},
                     {-0.5, -hw, -15.0},
                     {-hw, hw, 0.0},
                     {hw, 0.25, -15.0},
                     {0.25, 0.9, -15.0},
                     {0.9, 1.0, -15.0}});
    const auto a = sample_mask(coarse, grid);
    const auto b = sample_mask(fine, grid);
    for (std::size_t k = 0; k < a.values.size(); ++k)
        REQUIRE(a.values[k] == Catch::Approx(b.values[k]));
}

TEST_CASE("mask validation rejects bad definitions") {
    REQUIRE_THROWS_AS(Mask({{-1.0, 0.0, -10.0}}), std::invalid_argument);  // gap at [0,1]
    REQUIRE_THROWS_AS(Mask({{-1.0, 0.2, 0.0}, {0.1, 1.0, -10.0}}), std::invalid_argument);
    // two disjoint regions at the maximum level
    REQUIRE_THROWS_AS(Mask({{-1.0, -0.5, 0.0}, {-0.5, 0.5, -10.0}, {0.5, 1.0, 0.0}}),
                      std::invalid_argument);
}

TEST_CASE("mask mainlobe region") {
    const auto mask = flat_mask(16, -15.0);
    const auto ml = mask.mainlobe();
    REQUIRE(ml.first == Catch::Approx(-1.0 / 16));
    REQUIRE(ml.second == Catch::Approx(1.0 / 16));
    REQUIRE(mask.in_mainlobe(0.0));
    REQUIRE_FALSE(mask.in_mainlobe(0.5));

    const Mask everything({{-1.0, 1.0, 0.0}});
    REQUIRE(everything.mainlobe_covers_all());
}

TEST_CASE("mask file round trip and validation") {
    const auto mask = tapered_mask(24);
    std::stringstream buf;
    save_mask(mask, buf);
    const auto loaded = load_mask(buf);
    REQUIRE(loaded.segments().size() == mask.segments().size());
    for (double u : {-0.9, -0.4, -0.1, 0.0, 0.2, 0.7})
        REQUIRE(loaded.level_db(u) == Catch::Approx(mask.level_db(u)));

    std::stringstream bad("-1.0 0.0 -15\nnot a number\n");
    REQUIRE_THROWS_WITH(load_mask(bad), Catch::Matchers::ContainsSubstring("line 2"));

    std::stringstream gap("-1.0 0.0 -15\n0.5 1.0 0\n");
    REQUIRE_THROWS_AS(load_mask(gap), std::invalid_argument);
}
