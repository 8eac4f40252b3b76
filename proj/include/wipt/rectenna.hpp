#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include <Eigen/Dense>

#include "wipt/chanmodel.hpp"

namespace wipt {

/// Single-diode rectifier with a Taylor-truncated I-V characteristic.
/// `order` is the even truncation order n_o; 2 is the linear model.
struct RectennaModel {
    double saturation_current = 5e-6;   // i_s [A]
    double ideality = 1.05;             // n
    double thermal_voltage = 25.86e-3;  // v_t [V]
    double antenna_resistance = 50.0;   // R_ant [Ohm]
    int order = 4;

    void validate() const;
};

/// k_i = i_s / (i! (n v_t)^i). Defined for any i >= 1.
double taylor_coefficient(const RectennaModel& model, int i);

/// k_i for every even i in [2, order].
std::map<int, double> taylor_coeffs(const RectennaModel& model);

/// Superposed multisine + OFDM waveform with a power-splitting ratio.
///
/// Multisine weights are w_{P,n,m} = s_P e^{j phi_P}. OFDM amplitudes are
/// s_{I,n,m} = sqrt(P_{I,n}) |w~_{I,n,m}|, so unit-variance symbols are
/// assumed when the waveform is synthesized.
struct WaveformDesign {
    Eigen::MatrixXd multisine_amp;
    Eigen::MatrixXd multisine_phase;
    Eigen::MatrixXd ofdm_amp;
    Eigen::MatrixXd ofdm_phase;
    double rho = 1.0;

    static WaveformDesign zeros(std::size_t tones, std::size_t antennas);

    std::size_t tones() const { return static_cast<std::size_t>(multisine_amp.rows()); }
    std::size_t antennas() const { return static_cast<std::size_t>(multisine_amp.cols()); }

    double multisine_power() const { return 0.5 * multisine_amp.squaredNorm(); }
    double ofdm_power() const { return 0.5 * ofdm_amp.squaredNorm(); }
    double total_power() const { return multisine_power() + ofdm_power(); }

    /// Shape, sign and rho checks; the power check is skipped when budget <= 0.
    void validate(double power_budget = 0.0, double rel_tol = 1e-6) const;
};

/// Quadruples (n0, n1, n2, n3) in [0, N)^4 with n0 + n1 = n2 + n3. The set has
/// (2N^3 + N) / 3 entries; it is computed once per N and cached.
std::span<const std::array<int, 4>> quad_indices(std::size_t tones);

/// Per-tone received complex amplitude h_n w_n for amplitude/phase matrices.
Eigen::VectorXcd received_amplitudes(const ChannelFreqResponse& channel,
                                     const Eigen::MatrixXd& amp, const Eigen::MatrixXd& phase);

/// Split of z_DC into its second- and fourth-order contributions.
struct ZdcTerms {
    double quadratic = 0.0;
    double quartic = 0.0;
    double total() const { return quadratic + quartic; }
};

/// WPT-only multisine z_DC (no power splitting).
ZdcTerms zdc_multisine_terms(const WaveformDesign& design, const ChannelFreqResponse& channel,
                             const RectennaModel& model);
double zdc_multisine(const WaveformDesign& design, const ChannelFreqResponse& channel,
                     const RectennaModel& model);

/// WPT-only OFDM z_DC averaged over Gaussian input symbols.
ZdcTerms zdc_ofdm_terms(const WaveformDesign& design, const ChannelFreqResponse& channel,
                        const RectennaModel& model);
double zdc_ofdm(const WaveformDesign& design, const ChannelFreqResponse& channel,
                const RectennaModel& model);

/// z_DC of the superposed waveform at the harvester branch of the splitter.
ZdcTerms zdc_superposed_terms(const WaveformDesign& design, const ChannelFreqResponse& channel,
                              const RectennaModel& model);
double zdc_superposed(const WaveformDesign& design, const ChannelFreqResponse& channel,
                      const RectennaModel& model);

/// Rate with perfect cancellation of the multisine, bits per OFDM symbol.
double rate_pc(const Eigen::MatrixXd& ofdm_amp, const Eigen::MatrixXd& ofdm_phase, double rho,
               const ChannelFreqResponse& channel, std::span<const double> noise);
double rate_pc(const Eigen::MatrixXd& ofdm_amp, const Eigen::MatrixXd& ofdm_phase, double rho,
               const ChannelFreqResponse& channel, double noise);

/// Rate when the multisine is treated as noise, bits per OFDM symbol.
double rate_nc(const Eigen::MatrixXd& multisine_amp, const Eigen::MatrixXd& ofdm_amp,
               const Eigen::MatrixXd& multisine_phase, const Eigen::MatrixXd& ofdm_phase,
               double rho, const ChannelFreqResponse& channel, std::span<const double> noise);
double rate_nc(const Eigen::MatrixXd& multisine_amp, const Eigen::MatrixXd& ofdm_amp,
               const Eigen::MatrixXd& multisine_phase, const Eigen::MatrixXd& ofdm_phase,
               double rho, const ChannelFreqResponse& channel, double noise);

/// Ricean K-factor s_P^2 / s_I^2 per tone and antenna. Entries with s_P = 0
/// are 0; entries with s_P > 0 and s_I = 0 are +inf.
Eigen::MatrixXd kfactor_map(const Eigen::MatrixXd& multisine_amp, const Eigen::MatrixXd& ofdm_amp);

// ---------------------------------------------------------------------------
// Time-domain oracle

enum class SymbolSampling {
    iid,             // plain Monte-Carlo draws
    latin_hypercube  // per-tone stratified magnitude and phase
};

struct OracleConfig {
    int samples_per_period = 1 << 14;
    int symbol_draws = 100000;
    int f0_multiple = 100;  // K, with f0 = K * df
    SymbolSampling sampling = SymbolSampling::iid;
    int threads = 1;

    /// Throws when the grid cannot resolve the fourth harmonic of the band.
    void validate(std::size_t tones) const;
};

struct OracleEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // zero for a purely deterministic waveform
};

/// Synthesizes y(t) = y_P(t) + y_I(t) over one period 1/df on a uniform grid
/// and averages sum_i k_i (rho R_ant)^{i/2} y(t)^i, for even i <= order. OFDM
/// symbols are redrawn `symbol_draws` times.
OracleEstimate oracle_zdc_estimate(const WaveformDesign& design, const ChannelFreqResponse& channel,
                                   const RectennaModel& model, const OracleConfig& cfg,
                                   std::uint64_t seed);
double oracle_zdc(const WaveformDesign& design, const ChannelFreqResponse& channel,
                  const RectennaModel& model, const OracleConfig& cfg, std::uint64_t seed);

}  // namespace wipt
