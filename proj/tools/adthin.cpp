#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adthin/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Thinned isophoric array synthesis in the autocorrelation domain"};
    app.require_subcommand(1);

    adthin::cli::Options options;
    std::uint64_t seed_value = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", options.config_path, "configuration file (JSON)")
            ->required();
        sub->add_option("--out", options.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed_value, "RNG seed (overrides config)")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--threads", options.threads, "worker threads, 0 = auto")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--timing", options.timing, "force single-threaded timing mode");
    };
    add_common(app.add_subcommand("synthesize", "run one synthesis and write its artifacts"));
    add_common(app.add_subcommand("sweep", "run an SLL or aperture sweep across modes"));
    add_common(app.add_subcommand("exhaust", "exhaustively map a small cost landscape"));

    CLI11_PARSE(app, argc, argv);
    if (seed_set) options.seed = seed_value;
    if (options.timing) options.threads = 1;

    const std::string subcommand = app.get_subcommands().front()->get_name();
    try {
        return adthin::cli::dispatch(subcommand, options);
    } catch (const adthin::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return adthin::cli::kExitConfig;
    } catch (const adthin::AfpaInfeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return adthin::cli::kExitAfpaInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
