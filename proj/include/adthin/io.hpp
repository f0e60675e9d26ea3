#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adthin/afpa.hpp"
#include "adthin/autocorr.hpp"
#include "adthin/ga.hpp"
#include "adthin/mask.hpp"
#include "adthin/oracle.hpp"
#include "adthin/pattern.hpp"

namespace adthin {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << std::setprecision(12);
    return out;
}

/// Pattern curve with the mask overlay, both in dB.
inline void write_pattern_csv(std::ostream& out, const PatternCurve& curve, const Mask& mask,
                              const std::string& timestamp = "") {
    if (!timestamp.empty()) out << "# generated " << timestamp << "\n";
    out << "u,value_db,mask_db\n";
    for (std::size_t i = 0; i < curve.u.size(); ++i)
        out << curve.u[i] << "," << linear_to_db(std::max(curve.values[i], 1e-300)) << ","
            << mask.level_db(curve.u[i]) << "\n";
}

/// The target / parent / final autocorrelation triple.
inline void write_autocorr_csv(std::ostream& out, const AutocorrTarget& target,
                               const Autocorrelation& parent, const Autocorrelation& layout,
                               const std::string& timestamp = "") {
    if (!timestamp.empty()) out << "# generated " << timestamp << "\n";
    out << "s,gamma_target,gamma_parent,gamma_layout\n";
    for (std::size_t s = 0; s < target.values.size(); ++s)
        out << s << "," << target.values[s] << "," << parent.values[s] << ","
            << layout.values[s] << "\n";
}

inline void write_trace_csv(std::ostream& out, const RunTrace& trace,
                            const std::string& timestamp = "") {
    if (!timestamp.empty()) out << "# generated " << timestamp << "\n";
    out << "iteration,best_cost\n";
    for (std::size_t i = 0; i < trace.best_cost.size(); ++i)
        out << (i + 1) << "," << trace.best_cost[i] << "\n";
}

inline void write_excitations_csv(std::ostream& out, const AuxExcitations& w,
                                  const GridSpec& grid, const std::string& timestamp = "") {
    if (!timestamp.empty()) out << "# generated " << timestamp << "\n";
    out << "slot,position,weight\n";
    const auto d = candidate_positions(grid);
    for (std::size_t p = 0; p < w.weights.size(); ++p)
        out << p << "," << d[p] << "," << w.weights[p] << "\n";
}

inline void write_histogram_csv(std::ostream& out, const LandscapeResult& result,
                                const std::string& timestamp = "") {
    if (!timestamp.empty()) out << "# generated " << timestamp << "\n";
    out << "cost_bin,relative_frequency\n";
    for (const auto& [bin, freq] : result.histogram) out << bin << "," << freq << "\n";
}

inline void write_raw_costs_csv(std::ostream& out, const LandscapeResult& result,
                                const std::string& timestamp = "") {
    if (!timestamp.empty()) out << "# generated " << timestamp << "\n";
    out << "cost,count\n";
    for (const auto& [cost, count] : result.raw_counts) out << cost << "," << count << "\n";
}

inline nlohmann::json trace_to_json(const RunTrace& trace) {
    return {
        {"convergence_iteration", trace.convergence_iteration},
        {"termination",
         trace.reason == Termination::Stagnation ? "stagnation" : "max-iterations"},
        {"wall_time_seconds", trace.wall_time_seconds},
        {"evaluations", trace.evaluations},
    };
}

inline nlohmann::json result_to_json(const SynthesisResult& result) {
    return {
        {"bits", std::vector<int>(result.layout.bits.begin(), result.layout.bits.end())},
        {"parent_bits", std::vector<int>(result.parent.bits.begin(), result.parent.bits.end())},
        {"element_count", result.layout.count()},
        {"shift", result.shift},
        {"cost", result.cost},
        {"mask_error", result.mask_error},
        {"sidelobe_db", result.sidelobe_db},
        {"trace", trace_to_json(result.trace)},
    };
}

inline nlohmann::json witnesses_to_json(const LandscapeResult& result) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& w : result.witnesses) arr.push_back(w.to_string());
    return {
        {"min_cost", result.min_cost},
        {"max_cost", result.max_cost},
        {"evaluated", result.evaluated},
        {"witnesses", arr},
    };
}

}  // namespace adthin
