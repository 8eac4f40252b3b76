#include "wipt/runner.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "wipt/io.hpp"
#include "wipt/parallel.hpp"
#include "wipt/rateenergy.hpp"
#include "wipt/scaling.hpp"
#include "wipt/validation.hpp"
#include "wipt/version.hpp"

namespace wipt {

using nlohmann::json;

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string lower(const char* s) {
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

struct Artifacts {
    std::vector<std::string> files;
    json summary = json::object();
};

int run_region(const ExperimentConfig& cfg, Artifacts& art, std::ostream& log) {
    const ChannelFreqResponse channel = build_channel(cfg.channel);
    save_channel(cfg.output_dir / "channel.json", channel);
    art.files.push_back("channel.json");

    SweepOptions sweep;
    sweep.grid_size = cfg.region.grid_size;
    sweep.rbar = cfg.region.rbar;
    sweep.threads = cfg.threads;
    sweep.wipt.tolerance = cfg.region.tolerance;
    sweep.wipt.max_iterations = cfg.region.max_iterations;
    sweep.wipt.extrapolate = cfg.region.extrapolate;

    bool any_feasible = false;
    for (RegionMode mode : cfg.region.modes) {
        const RegionBoundary b = sweep_region(channel, cfg.model, cfg.power_w, *cfg.noise_w, mode, sweep);
        const std::string tag = lower(to_string(mode));
        write_region_csv(cfg.output_dir / ("region_" + tag + ".csv"), b);
        write_hull_csv(cfg.output_dir / ("hull_" + tag + ".csv"), b.hull);
        write_solutions_csv(cfg.output_dir / ("solutions_" + tag + ".csv"), b);
        art.files.push_back("region_" + tag + ".csv");
        art.files.push_back("hull_" + tag + ".csv");
        art.files.push_back("solutions_" + tag + ".csv");

        json dumps = json::array();
        const std::vector<double> targets = sweep.rbar.empty() ? rate_grid(b.max_rate, sweep.grid_size) : sweep.rbar;
        std::size_t feasible = 0;
        for (std::size_t i = 0; i < b.solutions.size(); ++i) {
            dumps.push_back(solution_to_json(b.solutions[i], targets[i]));
            feasible += b.solutions[i].feasible ? 1 : 0;
            if (cfg.region.write_traces) {
                const std::string name = "traces/" + tag + "_" + std::to_string(i) + ".csv";
                write_trace_csv(cfg.output_dir / name, b.solutions[i].trace);
                art.files.push_back(name);
            }
        }
        write_json(cfg.output_dir / ("solutions_" + tag + ".json"), dumps);
        art.files.push_back("solutions_" + tag + ".json");

        any_feasible = any_feasible || feasible > 0;
        art.summary[to_string(mode)] = {{"max_rate", b.max_rate}, {"feasible_points", feasible},
                                        {"grid_points", b.solutions.size()}};
        log << to_string(mode) << ": " << feasible << "/" << b.solutions.size()
            << " grid points feasible, max rate " << b.max_rate << " bit/symbol\n";
    }
    if (!any_feasible) {
        log << "error: solver infeasible on every grid point\n";
        return exit_code::all_infeasible;
    }
    return exit_code::ok;
}

int run_scaling(const ExperimentConfig& cfg, Artifacts& art, std::ostream& log) {
    ScalingSpec spec = cfg.scaling.spec;
    spec.threads = cfg.threads;
    const ScalingResult r = scaling_experiment(spec, cfg.power_w, cfg.model, cfg.seed);
    write_scaling_csv(cfg.output_dir / "scaling.csv", r);
    art.files.push_back("scaling.csv");
    art.summary = {{"fit_class", to_string(r.fit.best)},
                   {"aic", r.fit.aic},
                   {"r_squared", r.fit.r_squared}};
    log << to_string(spec.waveform) << "/" << to_string(spec.strategy) << "/" << to_string(spec.channel)
        << ": quartic term trend " << to_string(r.fit.best) << "\n";
    return exit_code::ok;
}

int run_papr(const ExperimentConfig& cfg, Artifacts& art, std::ostream& log) {
    std::string summary = "N,multisine_papr_db,ofdm_papr_median_db,ofdm_papr_1e-2_db,ofdm_papr_1e-3_db\n";
    for (std::size_t tones : cfg.papr.tones) {
        const std::uint64_t seed = derive_seed(cfg.seed, tones);
        const OfdmPaprSamples s = papr_samples_ofdm(tones, cfg.papr.trials, seed, cfg.papr.oversampling, cfg.threads);
        const auto ccdf = papr_ccdf_ofdm(tones, cfg.papr.trials, seed, cfg.papr.step_db, cfg.papr.oversampling,
                                         cfg.threads);
        const std::string name = "papr_ccdf_N" + std::to_string(tones) + ".csv";
        write_ccdf_csv(cfg.output_dir / name, tones, ccdf);
        art.files.push_back(name);
        summary += std::to_string(tones) + "," + format_number(papr_multisine_db(tones)) + "," +
                   format_number(s.quantile(0.5)) + "," + format_number(s.quantile(1e-2)) + "," +
                   format_number(s.quantile(1e-3)) + "\n";
        log << "N=" << tones << ": multisine " << papr_multisine_db(tones) << " dB, OFDM median "
            << s.quantile(0.5) << " dB\n";
    }
    write_text(cfg.output_dir / "papr_summary.csv", summary);
    art.files.push_back("papr_summary.csv");
    return exit_code::ok;
}

int run_validation_mode(const ExperimentConfig& cfg, Artifacts& art, std::ostream& log) {
    ValidationOptions opt;
    opt.instances = cfg.validate.instances;
    opt.symbol_draws = cfg.validate.symbol_draws;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    const ValidationReport report = run_validation(cfg.model, opt);
    log << format_validation_table(report);
    write_validation_csv(cfg.output_dir / "validation.csv", report);
    art.files.push_back("validation.csv");
    art.summary = {{"checks", report.rows.size()}, {"failures", report.failures()}};
    return report.passed() ? exit_code::ok : exit_code::check_failed;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    Artifacts art;
    int status = exit_code::ok;
    try {
        switch (cfg.mode) {
            case ExperimentMode::region: status = run_region(cfg, art, log); break;
            case ExperimentMode::scaling: status = run_scaling(cfg, art, log); break;
            case ExperimentMode::papr: status = run_papr(cfg, art, log); break;
            case ExperimentMode::validate: status = run_validation_mode(cfg, art, log); break;
        }
        json manifest = {{"version", kVersion},
                         {"created_utc", utc_timestamp()},
                         {"config", config_to_json(cfg)},
                         {"artifacts", art.files},
                         {"summary", art.summary},
                         {"exit_status", status}};
        if (cfg.mode == ExperimentMode::region) {
            manifest["channel_seed"] = cfg.channel.seed;
            manifest["P_w"] = cfg.power_w;
            manifest["sigma2_w"] = *cfg.noise_w;
            manifest["N"] = cfg.channel.tones;
            manifest["M"] = cfg.channel.antennas;
            manifest["n_o"] = cfg.model.order;
        }
        write_json(cfg.output_dir / "manifest.json", manifest);
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return exit_code::io;
    } catch (const std::filesystem::filesystem_error& e) {
        log << "error: " << e.what() << "\n";
        return exit_code::io;
    }
    return status;
}

int run_config_file(const std::filesystem::path& path, const RunOverrides& overrides, std::ostream& log) {
    json j;
    {
        std::ifstream in(path);
        if (!in) {
            log << "error: cannot open config " << path.string() << "\n";
            return exit_code::io;
        }
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            log << "error: config field '<root>': invalid JSON: " << e.what() << "\n";
            return exit_code::schema;
        }
    }
    if (overrides.seed && j.is_object())
        j["seed"] = *overrides.seed;

    ExperimentConfig cfg;
    try {
        cfg = parse_config(j, path.parent_path());
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << "\n";
        return exit_code::schema;
    }
    if (overrides.output_dir)
        cfg.output_dir = *overrides.output_dir;
    if (overrides.threads)
        cfg.threads = *overrides.threads;
    return run_experiment(cfg, log);
}

int run_validate_command(bool quick, const RunOverrides& overrides, std::ostream& log) {
    ValidationOptions opt = quick ? quick_validation_options() : ValidationOptions{};
    if (overrides.seed)
        opt.seed = *overrides.seed;
    if (overrides.threads)
        opt.threads = *overrides.threads;
    const ValidationReport report = run_validation(RectennaModel{}, opt);
    log << format_validation_table(report);
    if (overrides.output_dir) {
        try {
            write_validation_csv(*overrides.output_dir / "validation.csv", report);
        } catch (const IoError& e) {
            log << "error: " << e.what() << "\n";
            return exit_code::io;
        }
    }
    return report.passed() ? exit_code::ok : exit_code::check_failed;
}

}  // namespace wipt
