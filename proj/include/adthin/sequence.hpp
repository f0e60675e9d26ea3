#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace adthin {

/// Binary thinning descriptor: bit p is 1 when slot p holds an element.
struct ThinningSequence {
    std::vector<std::uint8_t> bits;

    ThinningSequence() = default;
    explicit ThinningSequence(std::vector<std::uint8_t> b) : bits(std::move(b)) {}
    ThinningSequence(std::initializer_list<int> b) {
        bits.reserve(b.size());
        for (int v : b) bits.push_back(v ? 1 : 0);
    }

    int size() const { return static_cast<int>(bits.size()); }

    /// Element count N.
    int count() const {
        return std::accumulate(bits.begin(), bits.end(), 0,
                               [](int acc, std::uint8_t b) { return acc + (b ? 1 : 0); });
    }

    bool operator==(const ThinningSequence& other) const { return bits == other.bits; }

    std::string to_string() const {
        std::string s;
        s.reserve(bits.size());
        for (auto b : bits) s.push_back(b ? '1' : '0');
        return s;
    }
};

/// Rotation by sigma slots: output bit p is input bit (p + sigma) mod P.
inline ThinningSequence cyclic_shift(const ThinningSequence& alpha, int sigma) {
    const int p_count = alpha.size();
    if (sigma < 0 || sigma >= p_count)
        throw std::out_of_range("cyclic_shift: sigma must be in [0, P)");
    ThinningSequence out;
    out.bits.resize(alpha.bits.size());
    for (int p = 0; p < p_count; ++p)
        out.bits[static_cast<std::size_t>(p)] =
            alpha.bits[static_cast<std::size_t>((p + sigma) % p_count)];
    return out;
}

inline int hamming_distance(const ThinningSequence& a, const ThinningSequence& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        d += (a.bits[i] != b.bits[i]) ? 1 : 0;
    return d;
}

}  // namespace adthin
