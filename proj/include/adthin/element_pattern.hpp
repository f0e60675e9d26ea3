#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace adthin {

/// Element power pattern |F(u)|^2 as a tabulated lookup, or the isotropic
/// constant. Entered only as a multiplicative factor under the large-array
/// approximation.
class ElementPattern {
public:
    /// Isotropic element, |F(u)|^2 = 1.
    ElementPattern() = default;

    /// Tabulated |F(u)|^2 over an increasing u-grid; linear interpolation
    /// between samples, clamped at the ends.
    ElementPattern(std::vector<double> u_grid, std::vector<double> power)
        : u_(std::move(u_grid)), power_(std::move(power)) {
        if (u_.size() != power_.size() || u_.size() < 2)
            throw std::invalid_argument("ElementPattern: need matching grids, >= 2 points");
        if (!std::is_sorted(u_.begin(), u_.end()))
            throw std::invalid_argument("ElementPattern: u grid must be increasing");
        for (double p : power_)
            if (p < 0.0) throw std::invalid_argument("ElementPattern: negative power value");
        if (power_at(0.0) <= 0.0)
            throw std::invalid_argument("ElementPattern: must be positive at broadside");
    }

    bool isotropic() const { return u_.empty(); }

    double power_at(double u) const {
        if (isotropic()) return 1.0;
        if (u <= u_.front()) return power_.front();
        if (u >= u_.back()) return power_.back();
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const std::size_t hi = static_cast<std::size_t>(it - u_.begin());
        const std::size_t lo = hi - 1;
        const double t = (u - u_[lo]) / (u_[hi] - u_[lo]);
        return power_[lo] + t * (power_[hi] - power_[lo]);
    }

private:
    std::vector<double> u_;
    std::vector<double> power_;
};

}  // namespace adthin
