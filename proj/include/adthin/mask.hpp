#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adthin/grid.hpp"

namespace adthin {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// One piece of the pattern envelope: level_db holds on [u_start, u_end).
struct MaskSegment {
    double u_start = 0.0;
    double u_end = 0.0;
    double level_db = 0.0;
};

/// Piecewise-constant upper envelope for the normalized power pattern over
/// the visible range u in [-1, 1], levels relative to the mainlobe peak.
class Mask {
public:
    explicit Mask(std::vector<MaskSegment> segments) : segments_(std::move(segments)) {
        validate();
    }

    const std::vector<MaskSegment>& segments() const { return segments_; }

    double level_db(double u) const {
        if (u < -1.0 || u > 1.0)
            throw std::out_of_range("Mask: u outside visible range");
        // Last segment owns its right endpoint.
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto& s = segments_[i];
            const bool last = (i + 1 == segments_.size());
            if (u >= s.u_start - kEps && (u < s.u_end - kEps || (last && u <= s.u_end + kEps)))
                return s.level_db;
        }
        throw std::runtime_error("Mask: gap at u=" + std::to_string(u));
    }

    double level_linear(double u) const { return db_to_linear(level_db(u)); }

    double max_level_db() const {
        double m = segments_.front().level_db;
        for (const auto& s : segments_) m = std::max(m, s.level_db);
        return m;
    }

    /// The contiguous u-interval attaining the maximum level.
    std::pair<double, double> mainlobe() const { return mainlobe_; }

    bool in_mainlobe(double u) const {
        return u >= mainlobe_.first - kEps && u <= mainlobe_.second + kEps;
    }

    /// True when the mainlobe spans the whole visible range (no sidelobe region).
    bool mainlobe_covers_all() const {
        return mainlobe_.first <= -1.0 + kEps && mainlobe_.second >= 1.0 - kEps;
    }

    double integral_linear() const {
        double acc = 0.0;
        for (const auto& s : segments_)
            acc += (s.u_end - s.u_start) * db_to_linear(s.level_db);
        return acc;
    }

private:
    static constexpr double kEps = 1e-12;

    void validate() {
        if (segments_.empty()) throw std::invalid_argument("Mask: no segments");
        std::sort(segments_.begin(), segments_.end(),
                  [](const MaskSegment& a, const MaskSegment& b) { return a.u_start < b.u_start; });
        if (std::abs(segments_.front().u_start + 1.0) > 1e-9)
            throw std::invalid_argument("Mask: coverage must start at u=-1");
        if (std::abs(segments_.back().u_end - 1.0) > 1e-9)
            throw std::invalid_argument("Mask: coverage must end at u=+1");
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (segments_[i].u_end <= segments_[i].u_start)
                throw std::invalid_argument("Mask: segment with non-positive width");
            if (i > 0 && std::abs(segments_[i].u_start - segments_[i - 1].u_end) > 1e-9)
                throw std::invalid_argument("Mask: gap or overlap between segments");
        }
        // Mainlobe: the contiguous run of segments at the maximum level.
        const double peak = max_level_db();
        int first = -1, last = -1;
        for (int i = 0; i < static_cast<int>(segments_.size()); ++i) {
            if (std::abs(segments_[static_cast<std::size_t>(i)].level_db - peak) < 1e-9) {
                if (first < 0) first = i;
                else if (i != last + 1)
                    throw std::invalid_argument("Mask: maximum level attained in disjoint regions");
                last = i;
            }
        }
        mainlobe_ = {segments_[static_cast<std::size_t>(first)].u_start,
                     segments_[static_cast<std::size_t>(last)].u_end};
    }

    std::vector<MaskSegment> segments_;
    std::pair<double, double> mainlobe_{};
};

/// P mask samples in linear power scale, M_k = M(wrap(u_k)).
struct MaskSamples {
    std::vector<double> values;
};

inline MaskSamples sample_mask(const Mask& mask, const GridSpec& grid) {
    MaskSamples out;
    out.values.resize(static_cast<std::size_t>(grid.num_slots));
    for (int k = 0; k < grid.num_slots; ++k)
        out.values[static_cast<std::size_t>(k)] = mask.level_linear(wrap_u(sample_u(grid, k)));
    return out;
}

// ---- builders for the benchmark masks -------------------------------------

/// Flat sidelobe mask: 0 dB for |u| < beam_halfwidth, sll_db elsewhere.
/// Default mainlobe half-width is 1/P.
inline Mask flat_mask(int p_count, double sll_db, double beam_halfwidth = 0.0) {
    const double hw = beam_halfwidth > 0.0 ? beam_halfwidth : 1.0 / p_count;
    return Mask({{-1.0, -hw, sll_db}, {-hw, hw, 0.0}, {hw, 1.0, sll_db}});
}

/// Tapered sidelobe mask: envelope decays away from the mainlobe.
/// Mainlobe spans one sampling period on the half-wavelength grid.
inline Mask tapered_mask(int p_count) {
    const double hw = 2.0 / p_count;
    return Mask({{-1.0, -0.6, -25.0},
                 {-0.6, -0.3, -18.0},
                 {-0.3, -hw, -12.0},
                 {-hw, hw, 0.0},
                 {hw, 0.3, -12.0},
                 {0.3, 0.6, -18.0},
                 {0.6, 1.0, -25.0}});
}

/// Irregular sidelobe mask: non-monotone multi-level envelope.
inline Mask irregular_mask(int p_count) {
    const double hw = 2.0 / p_count;
    return Mask({{-1.0, -0.8, -15.0},
                 {-0.8, -0.5, -22.0},
                 {-0.5, -0.2, -12.0},
                 {-0.2, -hw, -20.0},
                 {-hw, hw, 0.0},
                 {hw, 0.2, -20.0},
                 {0.2, 0.5, -12.0},
                 {0.5, 0.8, -22.0},
                 {0.8, 1.0, -15.0}});
}

/// Irregular mask, second variant, used for the aperture sweeps.
inline Mask irregular_mask2(int p_count) {
    const double hw = 2.0 / p_count;
    return Mask({{-1.0, -0.7, -20.0},
                 {-0.7, -0.35, -13.0},
                 {-0.35, -hw, -17.0},
                 {-hw, hw, 0.0},
                 {hw, 0.35, -17.0},
                 {0.35, 0.7, -13.0},
                 {0.7, 1.0, -20.0}});
}

// ---- mask file I/O --------------------------------------------------------
//
// Structured text, one segment per line: "u_start u_end level_db".
// Blank lines and lines starting with '#' are ignored.

inline Mask load_mask(std::istream& in) {
    std::vector<MaskSegment> segs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        MaskSegment s;
        if (!(ls >> s.u_start >> s.u_end >> s.level_db))
            throw std::runtime_error("mask file: malformed segment at line " +
                                     std::to_string(lineno));
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("mask file: trailing tokens at line " +
                                     std::to_string(lineno));
        segs.push_back(s);
    }
    return Mask(std::move(segs));
}

inline Mask load_mask_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("mask file: cannot open " + path);
    return load_mask(in);
}

inline void save_mask(const Mask& mask, std::ostream& out) {
    out << "# u_start u_end level_db\n";
    for (const auto& s : mask.segments())
        out << s.u_start << " " << s.u_end << " " << s.level_db << "\n";
}

}  // namespace adthin
