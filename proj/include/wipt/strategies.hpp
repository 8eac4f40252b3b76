#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wipt/chanmodel.hpp"
#include "wipt/gpsolve.hpp"
#include "wipt/rectenna.hpp"

namespace wipt {

/// Amplitude and phase matrices (N x M) of one waveform component.
struct AmplitudePhase {
    Eigen::MatrixXd amp;
    Eigen::MatrixXd phase;
};

/// Phases -arg(h_{n,m}) for both components; every received term adds in phase.
struct MatchedPhases {
    Eigen::MatrixXd multisine;
    Eigen::MatrixXd ofdm;
};

MatchedPhases matched_phases(const ChannelFreqResponse& channel);

/// Index of the strongest tone by ||h_n||^2; the lowest index wins ties.
std::size_t strongest_tone(const ChannelFreqResponse& channel);

/// Adaptive single sinewave: all power on the strongest tone, beamformer
/// sqrt(2P) h^H / ||h||. Throws on an all-zero channel.
Eigen::MatrixXcd ass_weights(const ChannelFreqResponse& channel, double power);
AmplitudePhase ass_waveform(const ChannelFreqResponse& channel, double power);

/// Uniform power: amplitudes sqrt(2P / (N M)), zero phases.
AmplitudePhase up_weights(std::size_t tones, double power, std::size_t antennas = 1);

/// Uniform power across tones with matched phases and, per tone, a matched
/// beamformer: amplitudes sqrt(2P / N) |h_{n,m}| / ||h_n||.
AmplitudePhase upmf_weights(const ChannelFreqResponse& channel, double power);

/// Water-filling p_n = max(0, mu - noise / g_n) with sum p_n = budget.
/// Tones with g_n = 0 receive nothing.
std::vector<double> waterfill_levels(std::span<const double> gains, double noise, double budget);

/// Water-filling OFDM precoder with matched beamforming. The levels are
/// squared amplitudes s_n^2, so 0.5 * ||S_I||^2 = P.
AmplitudePhase waterfilling(const ChannelFreqResponse& channel, double power, double noise);

/// Rate of the water-filling precoder at rho = 0; the largest achievable rate.
double max_rate(const ChannelFreqResponse& channel, double power, double noise);

struct SequentialOptions {
    double tolerance = 1e-5;
    int max_iterations = 50;
    double floor_fraction = 1e-8;  // amplitude floor relative to sqrt(2P / (N M))
    bool extrapolate = true;       // extend each GP step in log space while feasible
    gp::GpSolverOptions gp;
};

struct WptSolution {
    WaveformDesign design;  // multisine only, rho = 1
    double zdc = 0.0;
    gp::SolveTrace trace;
};

/// Maximizes the WPT-only multisine z_DC with matched phases under the power
/// budget by sequential condensation from the UPMF waveform.
WptSolution optimize_multisine_wpt(const ChannelFreqResponse& channel, const RectennaModel& model,
                                   double power, const SequentialOptions& options = {});

enum class WiptMode { pc_joint, pc_decoupled, nc };

const char* to_string(WiptMode mode);

struct WiptOptions : SequentialOptions {
    /// Removes the multisine from the problem (no-WPT waveform).
    bool force_zero_multisine = false;
};

struct WiptSolution {
    WaveformDesign design;
    double rate = 0.0;  // recomputed from the design with the mode's rate formula
    double zdc = 0.0;
    double rho_bar = 0.0;  // decoder fraction used by the rate constraint
    gp::SolveTrace trace;
    WiptMode mode = WiptMode::pc_joint;
    bool feasible = false;
    std::string message;
    double solve_seconds = 0.0;

    gp::SolveStatus status() const { return trace.status; }
};

/// Joint space-frequency design for a receiver that cancels the multisine.
WiptSolution algorithm1_pc(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                           double noise, double rate_target, const WiptOptions& options = {});

/// Same receiver; per-tone matched beamforming reduces the problem to N
/// amplitudes per component.
WiptSolution algorithm2_pc_decoupled(const ChannelFreqResponse& channel, const RectennaModel& model,
                                     double power, double noise, double rate_target,
                                     const WiptOptions& options = {});

/// Receiver that treats the multisine as interference.
WiptSolution algorithm3_nc(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                           double noise, double rate_target, const WiptOptions& options = {});

WiptSolution solve_wipt(WiptMode mode, const ChannelFreqResponse& channel, const RectennaModel& model,
                        double power, double noise, double rate_target, const WiptOptions& options = {});

}  // namespace wipt
