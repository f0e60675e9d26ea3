#pragma once

#include <stdexcept>
#include <vector>

namespace adthin {

/// Uniform linear candidate grid. All lengths are in wavelengths.
struct GridSpec {
    int num_slots = 0;     ///< P, number of candidate positions
    double spacing = 0.5;  ///< grid step in wavelengths

    GridSpec() = default;
    GridSpec(int p, double dz) : num_slots(p), spacing(dz) {
        if (p < 2) throw std::invalid_argument("GridSpec: num_slots must be >= 2");
        if (dz <= 0.0) throw std::invalid_argument("GridSpec: spacing must be positive");
    }
};

/// Slot positions d_p = (p - (P-1)/2) * dz, symmetric about the origin.
inline std::vector<double> candidate_positions(const GridSpec& grid) {
    const int p_count = grid.num_slots;
    std::vector<double> d(static_cast<std::size_t>(p_count));
    const double center = 0.5 * (p_count - 1);
    for (int p = 0; p < p_count; ++p)
        d[static_cast<std::size_t>(p)] = (p - center) * grid.spacing;
    return d;
}

/// Sampling abscissa u_k = k / (P * dz), before aliasing into the visible range.
inline double sample_u(const GridSpec& grid, int k) {
    return static_cast<double>(k) / (grid.num_slots * grid.spacing);
}

/// Alias u into [-1, 1) by shifting multiples of 2 (the sampled spectrum is P-periodic).
inline double wrap_u(double u) {
    while (u >= 1.0) u -= 2.0;
    while (u < -1.0) u += 2.0;
    return u;
}

}  // namespace adthin
