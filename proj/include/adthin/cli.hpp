#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adthin/io.hpp"
#include "adthin/oracle.hpp"
#include "adthin/pd.hpp"

namespace adthin::cli {

using nlohmann::json;

/// Configuration problems get their own exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAfpaInfeasible = 3;

struct Options {
    std::string config_path;
    std::string out_dir;               ///< overrides config output_dir when set
    std::optional<std::uint64_t> seed; ///< overrides config seed when set
    int threads = 0;                   ///< 0 = auto
    bool timing = false;               ///< forces single-threaded execution
};

inline json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

inline const json& require(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) throw ConfigError("config: missing key '" + key + "'");
    return cfg.at(key);
}

template <typename T>
T get_or(const json& cfg, const std::string& key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad value for key '" + key + "'");
    }
}

inline GridSpec parse_grid(const json& cfg) {
    const auto& g = require(cfg, "grid");
    try {
        return GridSpec(require(g, "num_slots").get<int>(),
                        get_or<double>(g, "spacing", 0.5));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: grid: ") + e.what());
    }
}

inline Mask parse_mask(const json& cfg, int p_count) {
    const auto& m = require(cfg, "mask");
    try {
        if (m.contains("file")) return load_mask_file(m.at("file").get<std::string>());
        const std::string type = require(m, "type").get<std::string>();
        if (type == "flat")
            return flat_mask(p_count, require(m, "sll_db").get<double>(),
                             get_or<double>(m, "beam_halfwidth", 0.0));
        if (type == "tapered") return tapered_mask(p_count);
        if (type == "irregular") return irregular_mask(p_count);
        if (type == "irregular2") return irregular_mask2(p_count);
        throw ConfigError("config: unknown mask type '" + type + "'");
    } catch (const std::exception& e) {
        if (dynamic_cast<const ConfigError*>(&e)) throw;
        throw ConfigError(std::string("config: mask: ") + e.what());
    }
}

inline GaConfig parse_ga(const json& cfg, const Options& options) {
    GaConfig ga;
    if (cfg.contains("ga")) {
        const auto& g = cfg.at("ga");
        ga.population_size = get_or<int>(g, "population_size", ga.population_size);
        ga.max_iterations = get_or<int>(g, "max_iterations", ga.max_iterations);
        ga.stagnation_window = get_or<int>(g, "stagnation_window", ga.stagnation_window);
        ga.stagnation_threshold =
            get_or<double>(g, "stagnation_threshold", ga.stagnation_threshold);
        ga.crossover_probability =
            get_or<double>(g, "crossover_probability", ga.crossover_probability);
        ga.mutation_probability =
            get_or<double>(g, "mutation_probability", ga.mutation_probability);
        ga.tournament_size = get_or<int>(g, "tournament_size", ga.tournament_size);
        ga.elite_count = get_or<int>(g, "elite_count", ga.elite_count);
        ga.rng_seed = get_or<std::uint64_t>(g, "rng_seed", ga.rng_seed);
    }
    if (options.seed) ga.rng_seed = *options.seed;
    return ga;
}

inline json ga_to_json(const GaConfig& ga) {
    return {
        {"population_size", ga.population_size},
        {"max_iterations", ga.max_iterations},
        {"stagnation_window", ga.stagnation_window},
        {"stagnation_threshold", ga.stagnation_threshold},
        {"crossover_probability", ga.crossover_probability},
        {"mutation_probability", ga.mutation_probability},
        {"tournament_size", ga.tournament_size},
        {"elite_count", ga.elite_count},
        {"rng_seed", ga.rng_seed},
        {"fixed_n", ga.fixed_n},
    };
}

inline std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

inline std::string output_dir(const json& cfg, const Options& options) {
    std::string dir =
        !options.out_dir.empty() ? options.out_dir : get_or<std::string>(cfg, "output_dir", ".");
    std::filesystem::create_directories(dir);
    return dir;
}

inline AutocorrTarget synthesis_target(const std::string& mode, const Mask& mask,
                                       const GridSpec& grid, int n_elements) {
    if (mode == "me-ad") return target_me(sample_mask(mask, grid), n_elements);
    const auto w = solve_afpa(mask, grid);
    return target_fpe(feasible_samples(w, grid), n_elements);
}

/// `synthesize` subcommand: one run, full artifact set on disk.
inline int run_synthesize(const json& cfg, const Options& options) {
    const std::string mode = require(cfg, "mode").get<std::string>();
    if (mode != "me-ad" && mode != "fpe-ad" && mode != "pd")
        throw ConfigError("config: mode must be one of me-ad | fpe-ad | pd");
    const GridSpec grid = parse_grid(cfg);
    const Mask mask = parse_mask(cfg, grid.num_slots);
    GaConfig ga = parse_ga(cfg, options);
    int n_elements = get_or<int>(cfg, "n_elements", 0);
    if (n_elements <= 0 && mode != "fpe-ad")
        throw ConfigError("config: n_elements is required for mode '" + mode + "'");

    SynthesisResult result;
    if (mode == "me-ad") result = run_me_ad(mask, grid, n_elements, ga);
    else if (mode == "fpe-ad") result = run_fpe_ad(mask, grid, n_elements, ga);
    else result = run_pd(mask, grid, n_elements, ga);
    if (n_elements <= 0) n_elements = result.layout.count();

    const std::string dir = output_dir(cfg, options);
    const std::string run_id = get_or<std::string>(cfg, "run_id", mode);
    const std::string stem = dir + "/" + run_id;
    const std::string ts = timestamp_now();

    ga.fixed_n = n_elements;  // resolved defaults, for provenance
    json layout = result_to_json(result);
    layout["mode"] = mode;
    layout["grid"] = {{"num_slots", grid.num_slots}, {"spacing", grid.spacing}};
    layout["ga"] = ga_to_json(ga);
    layout["generated"] = ts;
    {
        auto out = open_output(stem + "_layout.json");
        out << layout.dump(2) << "\n";
    }
    {
        PatternEvaluator eval(grid, dense_u_grid(grid.num_slots));
        auto out = open_output(stem + "_pattern.csv");
        write_pattern_csv(out, eval.evaluate(result.layout), mask, ts);
    }
    if (mode != "pd") {
        const auto target = synthesis_target(mode, mask, grid, n_elements);
        auto out = open_output(stem + "_autocorr.csv");
        write_autocorr_csv(out, target, autocorrelation(result.parent),
                           autocorrelation(result.layout), ts);
    }
    {
        auto out = open_output(stem + "_trace.csv");
        write_trace_csv(out, result.trace, ts);
    }
    return kExitOk;
}

/// `sweep` subcommand: SLL or aperture sweeps across modes, one CSV row per
/// (axis value, mode, seed summary). A failing point is recorded, not fatal.
inline int run_sweep(const json& cfg, const Options& options) {
    const std::string axis = require(cfg, "axis").get<std::string>();
    if (axis != "sll" && axis != "aperture")
        throw ConfigError("config: axis must be 'sll' or 'aperture'");
    const auto values = require(cfg, "values").get<std::vector<double>>();
    const auto modes = require(cfg, "modes").get<std::vector<std::string>>();
    for (const auto& m : modes)
        if (m != "me-ad" && m != "fpe-ad" && m != "pd")
            throw ConfigError("config: unknown mode '" + m + "' in modes");
    const auto seeds =
        get_or<std::vector<std::uint64_t>>(cfg, "seeds", std::vector<std::uint64_t>{1});
    const GaConfig ga_base = parse_ga(cfg, options);
    const int n_cfg = get_or<int>(cfg, "n_elements", 0);

    const std::string dir = output_dir(cfg, options);
    const std::string run_id = get_or<std::string>(cfg, "run_id", "sweep");
    auto out = open_output(dir + "/" + run_id + ".csv");
    out << "# generated " << timestamp_now() << "\n";
    out << "axis_value,mode,seed,mask_error,sidelobe_db,wall_time_seconds,"
           "convergence_iteration,status\n";

    for (double value : values) {
        GridSpec grid = axis == "aperture"
                            ? GridSpec(static_cast<int>(value),
                                       get_or<double>(require(cfg, "grid"), "spacing", 0.5))
                            : parse_grid(cfg);
        json mask_cfg = cfg;
        if (axis == "sll") {
            mask_cfg["mask"] = {{"type", "flat"}, {"sll_db", value}};
        }
        const Mask mask = parse_mask(mask_cfg, grid.num_slots);

        // The PD baseline and the ME runs need a concrete N; derive the
        // shared default from the auxiliary excitations once per point.
        int n_point = n_cfg;
        if (n_point <= 0) {
            try {
                n_point = rounded_count(solve_afpa(mask, grid));
            } catch (const std::exception&) {
                n_point = grid.num_slots / 2;
            }
        }

        for (const auto& mode : modes) {
            for (std::uint64_t seed : seeds) {
                GaConfig ga = ga_base;
                ga.rng_seed = seed;
                try {
                    SynthesisResult r;
                    if (mode == "me-ad") r = run_me_ad(mask, grid, n_point, ga);
                    else if (mode == "fpe-ad") r = run_fpe_ad(mask, grid, n_point, ga);
                    else r = run_pd(mask, grid, n_point, ga);
                    out << value << "," << mode << "," << seed << "," << r.mask_error << ","
                        << r.sidelobe_db << "," << r.trace.wall_time_seconds << ","
                        << r.trace.convergence_iteration << ",ok\n";
                } catch (const std::exception& e) {
                    out << value << "," << mode << "," << seed << ",,,,,failed: " << e.what()
                        << "\n";
                }
            }
        }
    }
    return kExitOk;
}

/// `exhaust` subcommand: PD and AD landscape histograms plus witnesses.
inline int run_exhaust(const json& cfg, const Options& options) {
    const GridSpec grid = parse_grid(cfg);
    const Mask mask = parse_mask(cfg, grid.num_slots);
    const auto objectives = get_or<std::vector<std::string>>(
        cfg, "objectives", std::vector<std::string>{"pd", "ad"});
    const int n_filter = get_or<int>(cfg, "n_filter", -1);

    const std::string dir = output_dir(cfg, options);
    const std::string run_id = get_or<std::string>(cfg, "run_id", "exhaust");
    const std::string ts = timestamp_now();

    AutocorrTarget target;
    for (const auto& objective : objectives) {
        LandscapeOptions lo;
        lo.n_filter = n_filter;
        lo.bin_width = get_or<double>(cfg, "bin_width", 1e-3);
        if (objective == "ad") {
            const int n_elements = require(cfg, "n_elements").get<int>();
            target = target_me(sample_mask(mask, grid), n_elements);
            lo.objective = LandscapeObjective::AD;
            lo.target = &target;
        } else if (objective == "pd") {
            lo.objective = LandscapeObjective::PD;
        } else {
            throw ConfigError("config: unknown objective '" + objective + "'");
        }
        LandscapeResult result;
        try {
            result = exhaust_landscape(grid, mask, lo);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        const std::string stem = dir + "/" + run_id + "_" + objective;
        {
            auto out = open_output(stem + "_histogram.csv");
            write_histogram_csv(out, result, ts);
        }
        {
            auto out = open_output(stem + "_costs.csv");
            write_raw_costs_csv(out, result, ts);
        }
        {
            auto out = open_output(stem + "_witnesses.json");
            json w = witnesses_to_json(result);
            w["generated"] = ts;
            out << w.dump(2) << "\n";
        }
    }
    return kExitOk;
}

inline int dispatch(const std::string& subcommand, const Options& options) {
    const json cfg = load_config(options.config_path);
    if (subcommand == "synthesize") return run_synthesize(cfg, options);
    if (subcommand == "sweep") return run_sweep(cfg, options);
    if (subcommand == "exhaust") return run_exhaust(cfg, options);
    throw ConfigError("unknown subcommand: " + subcommand);
}

}  // namespace adthin::cli
