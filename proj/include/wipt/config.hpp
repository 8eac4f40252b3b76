#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wipt/chanmodel.hpp"
#include "wipt/rateenergy.hpp"
#include "wipt/rectenna.hpp"
#include "wipt/scaling.hpp"

namespace wipt {

/// Schema violation; `field()` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class ExperimentMode { region, scaling, validate, papr };

const char* to_string(ExperimentMode mode);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

enum class ChannelSource { pdp, flat, iid, file };

struct ChannelConfig {
    ChannelSource source = ChannelSource::pdp;
    std::size_t tones = 0;
    std::size_t antennas = 1;
    std::uint64_t seed = 0;
    std::size_t taps = 18;
    double tap_spacing_s = 10e-9;
    double decay_s = 40e-9;
    double base_hz = 5.18e9;
    double bandwidth_hz = 1e6;
    double antenna_spacing_m = 0.0;  // 0: half a wavelength at base_hz
    std::filesystem::path file;
};

struct RegionConfig {
    std::vector<RegionMode> modes{RegionMode::pc};
    std::size_t grid_size = 20;
    std::vector<double> rbar;  // explicit targets in bits per symbol
    double tolerance = 1e-5;
    int max_iterations = 50;
    bool extrapolate = true;
    bool write_traces = false;
};

struct ScalingConfig {
    ScalingSpec spec;
};

struct PaprConfig {
    std::vector<std::size_t> tones{2, 4, 8, 16};
    std::size_t trials = 10000;
    int oversampling = 4;
    double step_db = 0.25;
};

struct ValidateConfig {
    std::size_t instances = 20;
    int symbol_draws = 100000;
};

/// Fully resolved experiment. All physical quantities are SI.
struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::region;
    std::uint64_t seed = 1;
    int threads = 1;
    std::filesystem::path output_dir = "wipt-out";
    double power_w = 1e-5;
    std::optional<double> noise_w;  // resolved from noise_w, noise_dbm or snr_db
    RectennaModel model;
    ChannelConfig channel;
    RegionConfig region;
    ScalingConfig scaling;
    PaprConfig papr;
    ValidateConfig validate;
};

/// Throws ConfigError. Relative channel file paths resolve against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// The resolved configuration, in the input schema with SI units.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ChannelFreqResponse build_channel(const ChannelConfig& cfg);

}  // namespace wipt
