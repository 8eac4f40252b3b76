#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "wipt/config.hpp"
#include "wipt/io.hpp"
#include "wipt/runner.hpp"
#include "wipt/validation.hpp"

using namespace wipt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("wipt_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_config(const fs::path& dir, const json& j) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << j.dump();
    return p;
}

json region_config() {
    return {{"mode", "region"},
            {"seed", 7},
            {"snr_db", 20},
            {"channel", {{"kind", "pdp"}, {"tones", 4}}},
            {"region", {{"modes", {"PC"}}, {"grid_size", 4}}}};
}

std::string field_of(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("unit conversions") {
    CHECK(dbm_to_watt(-20.0) == doctest::Approx(1e-5));
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
    CHECK(watt_to_dbm(1e-7) == doctest::Approx(-40.0));
}

TEST_CASE("config defaults and SNR convention") {
    const auto cfg = parse_config(region_config());
    CHECK(cfg.mode == ExperimentMode::region);
    CHECK(cfg.power_w == doctest::Approx(1e-5));
    REQUIRE(cfg.noise_w.has_value());
    CHECK(*cfg.noise_w == doctest::Approx(1e-7));
    CHECK(cfg.channel.seed == 7);
    CHECK(cfg.channel.tones == 4);
    CHECK(cfg.channel.taps == 18);
    CHECK(cfg.region.grid_size == 4);

    json j = region_config();
    j.erase("snr_db");
    j["noise_dbm"] = -40;
    j["power_w"] = 1e-5;
    CHECK(*parse_config(j).noise_w == doctest::Approx(1e-7));
}

TEST_CASE("schema errors name the field") {
    json j = region_config();
    j["channel"].erase("tones");
    CHECK(field_of(j) == "channel.tones");

    j = region_config();
    j["noise_w"] = 1e-7;
    // The later key of an exclusive group is the one reported.
    CHECK(field_of(j) == "snr_db");

    j = region_config();
    j["power_w"] = -1.0;
    CHECK(field_of(j) == "power_w");

    j = region_config();
    j.erase("mode");
    CHECK(field_of(j) == "mode");

    j = region_config();
    j["region"]["modes"] = {"XY"};
    CHECK(field_of(j) == "region.modes");

    j = region_config();
    j["channel"]["typo"] = 1;
    CHECK(field_of(j) == "channel.typo");

    CHECK(field_of({{"mode", "scaling"}, {"scaling", {{"waveform", "ofdm"}, {"strategy", "UP"}}}}) == "scaling.channel");
    CHECK(field_of({{"mode", "papr"}}) == "papr");
}

TEST_CASE("resolved config round-trips") {
    const auto cfg = parse_config(region_config());
    const auto again = parse_config(config_to_json(cfg));
    CHECK(again.power_w == cfg.power_w);
    CHECK(*again.noise_w == *cfg.noise_w);
    CHECK(again.channel.seed == cfg.channel.seed);
    CHECK(again.channel.decay_s == doctest::Approx(cfg.channel.decay_s));
    CHECK(again.region.modes == cfg.region.modes);
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.0, 1.0, -2.5, 1e-300, 3.141592653589793, 1.0 / 3.0})
        CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("region run writes the boundary, hull and solution files") {
    const fs::path dir = scratch("region");
    json j = region_config();
    j["output_dir"] = (dir / "out").string();
    std::ostringstream log;
    CHECK(run_config_file(write_config(dir, j), {}, log) == exit_code::ok);
    for (const char* f : {"region_pc.csv", "hull_pc.csv", "solutions_pc.csv", "solutions_pc.json", "channel.json",
                          "manifest.json"})
        CHECK(fs::exists(dir / "out" / f));

    const std::string csv = slurp(dir / "out" / "region_pc.csv");
    CHECK(csv.rfind("rbar,rate,rate_per_N,zdc_amps,rho,p_multisine,p_ofdm,iterations,status\n", 0) == 0);
    const auto manifest = json::parse(slurp(dir / "out" / "manifest.json"));
    CHECK(manifest["N"] == 4);
    CHECK(manifest["channel_seed"] == 7);
    CHECK(manifest["n_o"] == 4);
    CHECK(manifest["config"]["mode"] == "region");

    // Identical config and seed give byte-identical CSVs.
    RunOverrides again;
    again.output_dir = dir / "out2";
    CHECK(run_config_file(write_config(dir, j), again, log) == exit_code::ok);
    for (const char* f : {"region_pc.csv", "hull_pc.csv", "solutions_pc.csv"})
        CHECK(slurp(dir / "out" / f) == slurp(dir / "out2" / f));

    RunOverrides reseed;
    reseed.output_dir = dir / "out3";
    reseed.seed = 8;
    CHECK(run_config_file(write_config(dir, j), reseed, log) == exit_code::ok);
    CHECK(slurp(dir / "out" / "channel.json") != slurp(dir / "out3" / "channel.json"));
}

TEST_CASE("saved channels load back as a config channel") {
    const fs::path dir = scratch("file_channel");
    const auto h = iid_rayleigh_channel(3, 1, 4);
    save_channel(dir / "h.json", h);
    json j = region_config();
    j["channel"] = {{"kind", "file"}, {"file", "h.json"}};
    const auto cfg = parse_config(j, dir);
    CHECK(cfg.channel.tones == 3);
    CHECK((build_channel(cfg.channel).matrix() - h.matrix()).norm() == 0.0);
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("exit");
    std::ostringstream log;

    json missing = region_config();
    missing["channel"].erase("tones");
    CHECK(run_config_file(write_config(dir, missing), {}, log) == exit_code::schema);
    CHECK(log.str().find("channel.tones") != std::string::npos);

    json unreachable = region_config();
    const double huge = 1e6;
    unreachable["region"]["rbar"] = {huge, 2 * huge};
    unreachable["output_dir"] = (dir / "inf").string();
    CHECK(run_config_file(write_config(dir, unreachable), {}, log) == exit_code::all_infeasible);

    std::ofstream(dir / "blocker") << "x";
    json blocked = region_config();
    blocked["output_dir"] = (dir / "blocker" / "sub").string();
    CHECK(run_config_file(write_config(dir, blocked), {}, log) == exit_code::io);

    CHECK(run_config_file(dir / "nope.json", {}, log) == exit_code::io);
}

TEST_CASE("command-line binary reports schema errors with exit 2") {
    const fs::path dir = scratch("binary");
    json missing = region_config();
    missing["channel"].erase("tones");
    const fs::path cfg = write_config(dir, missing);
    const std::string cmd = std::string(WIPT_OPT_EXE) + " run " + cfg.string() + " 2> " + (dir / "err.txt").string();
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(slurp(dir / "err.txt").find("channel.tones") != std::string::npos);
}

TEST_CASE("scaling and papr runs write their tables") {
    const fs::path dir = scratch("scaling");
    std::ostringstream log;
    json s = {{"mode", "scaling"},
              {"output_dir", (dir / "s").string()},
              {"scaling", {{"waveform", "multisine"}, {"strategy", "UP"}, {"channel", "flat"}, {"tones", {4, 8, 16}}}}};
    CHECK(run_config_file(write_config(dir, s), {}, log) == exit_code::ok);
    const std::string csv = slurp(dir / "s" / "scaling.csv");
    CHECK(csv.rfind("N,mean_zdc,stderr,quad_term,quart_term,fit_class\n", 0) == 0);
    CHECK(csv.find(",linear\n") != std::string::npos);

    json p = {{"mode", "papr"}, {"output_dir", (dir / "p").string()}, {"papr", {{"tones", {2, 4}}, {"trials", 500}}}};
    CHECK(run_config_file(write_config(dir, p), {}, log) == exit_code::ok);
    CHECK(fs::exists(dir / "p" / "papr_ccdf_N4.csv"));
    CHECK(slurp(dir / "p" / "papr_summary.csv").find("\n2,6.02") != std::string::npos);
}

TEST_CASE("validation suite") {
    ValidationOptions opt;
    opt.instances = 20;
    opt.symbol_draws = 100000;
    const auto report = run_validation(RectennaModel{}, opt);
    CHECK(report.rows.size() == 60);
    CHECK(report.passed());
    const std::string table = format_validation_table(report);
    CHECK(table.find("60/60 checks passed") != std::string::npos);
}

}  // TEST_SUITE
