#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wipt/rectenna.hpp"

namespace wipt {

enum class ScalingWaveform { multisine, ofdm };
enum class ScalingStrategy { up, ass, upmf };
enum class ChannelKind { flat, selective };

/// Growth models compared by the trend classifier.
enum class TrendClass { flat, linear, log_squared };

const char* to_string(ScalingWaveform w);
const char* to_string(ScalingStrategy s);
const char* to_string(ChannelKind c);
const char* to_string(TrendClass t);

ScalingWaveform scaling_waveform_from_string(const std::string& name);
ScalingStrategy scaling_strategy_from_string(const std::string& name);
ChannelKind channel_kind_from_string(const std::string& name);

struct ScalingSpec {
    ScalingWaveform waveform = ScalingWaveform::multisine;
    ScalingStrategy strategy = ScalingStrategy::up;
    ChannelKind channel = ChannelKind::flat;
    std::vector<std::size_t> tones;  // ascending, at least three values
    std::size_t trials = 100;
    int threads = 1;

    void validate() const;
};

struct ScalingRow {
    std::size_t tones = 0;
    double mean_zdc = 0.0;
    double std_error = 0.0;
    double quad_term = 0.0;   // mean second-order contribution
    double quart_term = 0.0;  // mean fourth-order contribution
};

/// Least-squares fits of y against 1, N and ln^2 N, compared by AIC.
struct TrendFit {
    TrendClass best = TrendClass::flat;
    std::array<double, 3> aic{};        // indexed by TrendClass
    std::array<double, 3> r_squared{};  // flat model has R^2 = 0 by definition
    std::array<double, 3> intercept{};
    std::array<double, 3> slope{};
};

TrendFit classify_trend(std::span<const double> tones, std::span<const double> values);

struct ScalingResult {
    ScalingSpec spec;
    std::vector<ScalingRow> rows;
    TrendFit fit;  // fitted to the quartic term
};

/// Mean analytic z_DC per N. Flat channels carry no randomness and are
/// evaluated once per N; selective channels draw i.i.d. CN(0, 1) tone gains
/// per trial from seeds derived from `seed`.
ScalingResult scaling_experiment(const ScalingSpec& spec, double power, const RectennaModel& model,
                                 std::uint64_t seed);

}  // namespace wipt
