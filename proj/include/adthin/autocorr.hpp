#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adthin/mask.hpp"
#include "adthin/sequence.hpp"

namespace adthin {

/// Cyclic autocorrelation of a binary sequence; exact integer values.
struct Autocorrelation {
    std::vector<long long> values;

    int size() const { return static_cast<int>(values.size()); }
    bool operator==(const Autocorrelation& o) const { return values == o.values; }
};

/// DFT magnitudes of an autocorrelation (Gamma_k), with the descriptor-DFT
/// phases kept alongside for pattern reconstruction.
struct SpectrumSamples {
    std::vector<double> values;  ///< Gamma_k >= 0
    std::vector<double> phases;  ///< psi_k, radians; empty unless derived from a sequence
};

enum class TargetKind { ME, FPE };

/// Target autocorrelation gamma*_s for the AD cost function.
struct AutocorrTarget {
    std::vector<double> values;
    TargetKind kind = TargetKind::ME;
};

/// gamma_s = sum_p alpha_p * alpha_{(p+s) mod P}
inline Autocorrelation autocorrelation(const ThinningSequence& alpha) {
    const int p_count = alpha.size();
    Autocorrelation out;
    out.values.assign(static_cast<std::size_t>(p_count), 0);
    for (int s = 0; s < p_count; ++s) {
        long long acc = 0;
        for (int p = 0; p < p_count; ++p) {
            if (alpha.bits[static_cast<std::size_t>(p)] &&
                alpha.bits[static_cast<std::size_t>((p + s) % p_count)])
                ++acc;
        }
        out.values[static_cast<std::size_t>(s)] = acc;
    }
    return out;
}

/// Forward DFT of the descriptor sequence, A_k = sum_p alpha_p e^{+j 2 pi p k / P}.
inline std::vector<std::complex<double>> descriptor_dft(const ThinningSequence& alpha) {
    const int p_count = alpha.size();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(p_count));
    const double w = 2.0 * M_PI / p_count;
    for (int k = 0; k < p_count; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int p = 0; p < p_count; ++p)
            if (alpha.bits[static_cast<std::size_t>(p)])
                acc += std::polar(1.0, w * p * k);
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

/// Gamma_k = sum_s gamma_s e^{+j 2 pi s k / P}. Direct O(P^2) summation;
/// imaginary residue from the symmetric input is checked, not silently dropped.
inline SpectrumSamples spectrum(const Autocorrelation& gamma) {
    const int p_count = gamma.size();
    SpectrumSamples out;
    out.values.resize(static_cast<std::size_t>(p_count));
    const double w = 2.0 * M_PI / p_count;
    for (int k = 0; k < p_count; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int s = 0; s < p_count; ++s)
            acc += static_cast<double>(gamma.values[static_cast<std::size_t>(s)]) *
                   std::polar(1.0, w * s * k);
        const double scale = std::max(1.0, std::abs(acc));
        if (std::abs(acc.imag()) > 1e-9 * scale)
            throw std::runtime_error("spectrum: imaginary residue above tolerance");
        out.values[static_cast<std::size_t>(k)] = acc.real();
    }
    return out;
}

/// Spectrum of a sequence directly: Gamma_k = |A_k|^2, psi_k = arg(A_k).
inline SpectrumSamples spectrum(const ThinningSequence& alpha) {
    const auto dft = descriptor_dft(alpha);
    SpectrumSamples out;
    out.values.reserve(dft.size());
    out.phases.reserve(dft.size());
    for (const auto& a : dft) {
        out.values.push_back(std::norm(a));
        out.phases.push_back(std::arg(a));
    }
    return out;
}

/// IDFT coefficients mu_s = (1/P) sum_k x_k e^{-j 2 pi k s / P}, real parts.
/// `max_imag_residue` (relative) flags asymmetric inputs.
struct IdftResult {
    std::vector<double> coefficients;
    double max_imag_residue = 0.0;
};

inline IdftResult idft_coefficients(const std::vector<double>& samples) {
    const int p_count = static_cast<int>(samples.size());
    if (p_count == 0) throw std::invalid_argument("idft_coefficients: empty input");
    IdftResult out;
    out.coefficients.resize(static_cast<std::size_t>(p_count));
    const double w = -2.0 * M_PI / p_count;
    double norm = 0.0;
    for (double v : samples) norm = std::max(norm, std::abs(v));
    if (norm == 0.0) norm = 1.0;
    for (int s = 0; s < p_count; ++s) {
        std::complex<double> acc{0.0, 0.0};
        for (int k = 0; k < p_count; ++k)
            acc += samples[static_cast<std::size_t>(k)] * std::polar(1.0, w * k * s);
        acc /= static_cast<double>(p_count);
        out.coefficients[static_cast<std::size_t>(s)] = acc.real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(acc.imag()) / norm);
    }
    return out;
}

/// Mask-equality target: gamma*_s = N^2 * mu_s(M).
inline AutocorrTarget target_me(const MaskSamples& mask_samples, int n_elements) {
    if (n_elements < 1) throw std::invalid_argument("target_me: N must be >= 1");
    auto idft = idft_coefficients(mask_samples.values);
    AutocorrTarget out;
    out.kind = TargetKind::ME;
    out.values = std::move(idft.coefficients);
    const double n2 = static_cast<double>(n_elements) * n_elements;
    for (double& v : out.values) v *= n2;
    return out;
}

/// Feasible-pattern-equality target: gamma*_s = N^2 * mu_s(E^feas).
inline AutocorrTarget target_fpe(const std::vector<double>& feasible_samples, int n_elements) {
    if (n_elements < 1) throw std::invalid_argument("target_fpe: N must be >= 1");
    auto idft = idft_coefficients(feasible_samples);
    AutocorrTarget out;
    out.kind = TargetKind::FPE;
    out.values = std::move(idft.coefficients);
    const double n2 = static_cast<double>(n_elements) * n_elements;
    for (double& v : out.values) v *= n2;
    return out;
}

}  // namespace adthin
