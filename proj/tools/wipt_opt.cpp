#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wipt/runner.hpp"
#include "wipt/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Superposed multisine/OFDM waveform optimizer for wireless information and power transfer"};
    app.set_version_flag("--version", std::string(wipt::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    std::uint64_t seed = 0;
    auto* run = app.add_subcommand("run", "Run one experiment config (region, scaling, validate or papr)");
    run->add_option("config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory; overrides output_dir");
    run->add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Base seed; overrides the config seed");

    bool quick = false;
    std::string validate_out;
    int validate_threads = 0;
    std::uint64_t validate_seed = 0;
    auto* validate = app.add_subcommand("validate", "Compare closed-form z_DC against the time-domain oracle");
    validate->add_flag("--quick", quick, "Fewer instances and symbol draws");
    validate->add_option("--out", validate_out, "Directory for validation.csv");
    validate->add_option("--threads", validate_threads, "Worker thread cap")->check(CLI::PositiveNumber);
    validate->add_option("--seed", validate_seed, "Instance seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : wipt::exit_code::schema;
    }

    wipt::RunOverrides overrides;
    if (*run) {
        if (run->count("--out"))
            overrides.output_dir = out_dir;
        if (run->count("--threads"))
            overrides.threads = threads;
        if (run->count("--seed"))
            overrides.seed = seed;
        return wipt::run_config_file(config_path, overrides, std::cerr);
    }
    if (validate->count("--out"))
        overrides.output_dir = validate_out;
    if (validate->count("--threads"))
        overrides.threads = validate_threads;
    if (validate->count("--seed"))
        overrides.seed = validate_seed;
    return wipt::run_validate_command(quick, overrides, std::cout);
}
