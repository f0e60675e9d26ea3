#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "adthin/autocorr.hpp"
#include "adthin/element_pattern.hpp"
#include "adthin/grid.hpp"
#include "adthin/mask.hpp"
#include "adthin/sequence.hpp"

namespace adthin {

/// Normalized power pattern sampled on a u-grid (peak 1 at u=0).
struct PatternCurve {
    std::vector<double> u;
    std::vector<double> values;
};

/// Default dense evaluation grid: 20*P uniform points over [-1, 1].
inline std::vector<double> dense_u_grid(int p_count, int points_per_slot = 20) {
    const int n = points_per_slot * p_count;
    std::vector<double> u(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        u[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / n;
    return u;
}

/// Array-factor evaluator with a precomputed phase table, so repeated
/// evaluations on the same grid cost one complex multiply-add per (u, slot).
class PatternEvaluator {
public:
    PatternEvaluator(GridSpec grid, std::vector<double> u_points,
                     ElementPattern element = ElementPattern())
        : grid_(grid), u_(std::move(u_points)), element_(std::move(element)) {
        const auto d = candidate_positions(grid_);
        const std::size_t nu = u_.size();
        const std::size_t np = d.size();
        phases_.resize(nu * np);
        for (std::size_t i = 0; i < nu; ++i)
            for (std::size_t p = 0; p < np; ++p)
                phases_[i * np + p] = std::polar(1.0, 2.0 * M_PI * d[p] * u_[i]);
        element_power_.resize(nu);
        for (std::size_t i = 0; i < nu; ++i)
            element_power_[i] = element_.power_at(u_[i]);
        element_power_broadside_ = element_.power_at(0.0);
    }

    const std::vector<double>& u_points() const { return u_; }
    const GridSpec& grid() const { return grid_; }

    /// Normalized pattern |F(u)|^2 |AF(u)|^2 / (|F(0)|^2 N^2).
    PatternCurve evaluate(const ThinningSequence& alpha) const {
        const int n = alpha.count();
        if (n < 1) throw std::invalid_argument("power_pattern: empty layout");
        const std::size_t np = static_cast<std::size_t>(grid_.num_slots);
        if (alpha.bits.size() != np)
            throw std::invalid_argument("power_pattern: sequence/grid size mismatch");
        PatternCurve out;
        out.u = u_;
        out.values.resize(u_.size());
        const double denom = element_power_broadside_ * static_cast<double>(n) * n;
        for (std::size_t i = 0; i < u_.size(); ++i) {
            std::complex<double> af{0.0, 0.0};
            const std::complex<double>* row = &phases_[i * np];
            for (std::size_t p = 0; p < np; ++p)
                if (alpha.bits[p]) af += row[p];
            out.values[i] = element_power_[i] * std::norm(af) / denom;
        }
        return out;
    }

    /// Normalized pattern of real excitations (the auxiliary array path).
    PatternCurve evaluate(const std::vector<double>& weights) const {
        const std::size_t np = static_cast<std::size_t>(grid_.num_slots);
        if (weights.size() != np)
            throw std::invalid_argument("power_pattern: weights/grid size mismatch");
        double sum = 0.0;
        for (double w : weights) sum += w;
        if (sum == 0.0) throw std::invalid_argument("power_pattern: zero broadside response");
        PatternCurve out;
        out.u = u_;
        out.values.resize(u_.size());
        const double denom = element_power_broadside_ * sum * sum;
        for (std::size_t i = 0; i < u_.size(); ++i) {
            std::complex<double> af{0.0, 0.0};
            const std::complex<double>* row = &phases_[i * np];
            for (std::size_t p = 0; p < np; ++p)
                af += weights[p] * row[p];
            out.values[i] = element_power_[i] * std::norm(af) / denom;
        }
        return out;
    }

private:
    GridSpec grid_;
    std::vector<double> u_;
    ElementPattern element_;
    std::vector<std::complex<double>> phases_;
    std::vector<double> element_power_;
    double element_power_broadside_ = 1.0;
};

inline PatternCurve power_pattern(const ThinningSequence& alpha, const GridSpec& grid,
                                  const std::vector<double>& u_points,
                                  const ElementPattern& element = ElementPattern()) {
    return PatternEvaluator(grid, u_points, element).evaluate(alpha);
}

/// Pattern samples at u_k without any pattern evaluation: E~(u_k) = Gamma_k / N^2.
inline std::vector<double> pattern_samples(const ThinningSequence& alpha, const GridSpec& grid) {
    const int n = alpha.count();
    if (n < 1) throw std::invalid_argument("pattern_samples: empty layout");
    if (alpha.size() != grid.num_slots)
        throw std::invalid_argument("pattern_samples: sequence/grid size mismatch");
    const auto spec = spectrum(alpha);
    std::vector<double> out(spec.values.size());
    const double n2 = static_cast<double>(n) * n;
    for (std::size_t k = 0; k < spec.values.size(); ++k)
        out[k] = spec.values[k] / n2;
    return out;
}

/// Periodic interpolation kernel S(nu) = sin(P nu/2) / (P sin(nu/2)) e^{j (P-1) nu / 2}.
inline std::complex<double> interpolation_kernel(double nu, int p_count) {
    const double half = 0.5 * nu;
    double mag;
    if (std::abs(std::sin(half)) < 1e-12) {
        // nu at a multiple of 2*pi: limit value +-1.
        const double m = std::round(nu / (2.0 * M_PI));
        mag = std::cos(M_PI * p_count * m) / std::cos(M_PI * m);
    } else {
        mag = std::sin(p_count * half) / (p_count * std::sin(half));
    }
    return mag * std::polar(1.0, 0.5 * (p_count - 1) * nu);
}

/// Pattern reconstructed from {Gamma_k, psi_k} through the interpolation
/// kernel; agrees with the direct array-factor evaluation for isotropic
/// elements.
inline PatternCurve interpolated_pattern(const ThinningSequence& alpha, const GridSpec& grid,
                                         const std::vector<double>& u_points) {
    const int n = alpha.count();
    if (n < 1) throw std::invalid_argument("interpolated_pattern: empty layout");
    const int p_count = grid.num_slots;
    const auto spec = spectrum(alpha);
    PatternCurve out;
    out.u = u_points;
    out.values.resize(u_points.size());
    const double n2 = static_cast<double>(n) * n;
    for (std::size_t i = 0; i < u_points.size(); ++i) {
        const double omega = 2.0 * M_PI * grid.spacing * u_points[i];
        std::complex<double> acc{0.0, 0.0};
        for (int k = 0; k < p_count; ++k) {
            const std::size_t ks = static_cast<std::size_t>(k);
            acc += std::sqrt(spec.values[ks]) * std::polar(1.0, spec.phases[ks]) *
                   interpolation_kernel(omega - 2.0 * M_PI * k / p_count, p_count);
        }
        out.values[i] = std::norm(acc) / n2;
    }
    return out;
}

enum class ViolationMetric {
    Step,  ///< indicator of violation (the default)
    Ramp,  ///< max(excess, 0); carries gradient information, off by default
};

/// Mask matching error xi: trapezoid integral of the violation functional
/// over the curve grid, normalized by the mask's own integral.
inline double mask_matching_error(const PatternCurve& curve, const Mask& mask,
                                  ViolationMetric metric = ViolationMetric::Step) {
    if (curve.u.size() < 2 || curve.u.front() > -1.0 + 1e-9 || curve.u.back() < 1.0 - 1e-9)
        throw std::invalid_argument("mask_matching_error: curve grid must cover [-1, 1]");
    std::vector<double> viol(curve.u.size());
    for (std::size_t i = 0; i < curve.u.size(); ++i) {
        const double excess = curve.values[i] - mask.level_linear(curve.u[i]);
        if (metric == ViolationMetric::Step)
            viol[i] = excess > 1e-12 ? 1.0 : 0.0;
        else
            viol[i] = std::max(excess, 0.0);
    }
    double numer = 0.0;
    for (std::size_t i = 1; i < curve.u.size(); ++i)
        numer += 0.5 * (viol[i - 1] + viol[i]) * (curve.u[i] - curve.u[i - 1]);
    return numer / mask.integral_linear();
}

/// Peak of the normalized pattern outside the mask's mainlobe region, in dB.
inline double sidelobe_level(const PatternCurve& curve, const Mask& mask) {
    if (mask.mainlobe_covers_all())
        throw std::invalid_argument("sidelobe_level: mask has no sidelobe region");
    double peak = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < curve.u.size(); ++i) {
        if (mask.in_mainlobe(curve.u[i])) continue;
        peak = std::max(peak, curve.values[i]);
        any = true;
    }
    if (!any) throw std::invalid_argument("sidelobe_level: no curve points outside mainlobe");
    return linear_to_db(peak);
}

}  // namespace adthin
