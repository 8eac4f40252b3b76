#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wipt/chanmodel.hpp"
#include "wipt/rateenergy.hpp"
#include "wipt/scaling.hpp"
#include "wipt/strategies.hpp"

namespace wipt {

/// Raised for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"N": .., "M": .., "entries": [[re, im], ...]} in row-major (tone-major) order.
nlohmann::json channel_to_json(const ChannelFreqResponse& channel);
ChannelFreqResponse channel_from_json(const nlohmann::json& j);

void save_channel(const std::filesystem::path& path, const ChannelFreqResponse& channel);
ChannelFreqResponse load_channel(const std::filesystem::path& path);

/// Real N x M matrix in the same row-major layout.
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

/// Amplitudes, phases, rho, achieved (rate, z_DC) and a trace summary.
nlohmann::json solution_to_json(const WiptSolution& solution, double rate_target);

/// Shortest decimal that round-trips the double; "nan"/"inf" for non-finite values.
std::string format_number(double value);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// One CSV per boundary: rbar, rate, rate_per_N, zdc_amps, rho, p_multisine,
/// p_ofdm, iterations, status.
void write_region_csv(const std::filesystem::path& path, const RegionBoundary& boundary);
void write_hull_csv(const std::filesystem::path& path, const std::vector<HullPoint>& hull);
/// Long format: one row per (grid point, tone, antenna).
void write_solutions_csv(const std::filesystem::path& path, const RegionBoundary& boundary);
/// iteration, objective, step_norm, feasibility_residual, extrapolation.
void write_trace_csv(const std::filesystem::path& path, const gp::SolveTrace& trace);
/// N, mean_zdc, stderr, quad_term, quart_term, fit_class.
void write_scaling_csv(const std::filesystem::path& path, const ScalingResult& result);
void write_ccdf_csv(const std::filesystem::path& path, std::size_t tones, const std::vector<CcdfPoint>& ccdf);

}  // namespace wipt
