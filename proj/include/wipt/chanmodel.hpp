#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace wipt {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

/// One path of a power-delay profile: excess delay and mean power E{|alpha|^2}.
struct Tap {
    double delay_s = 0.0;
    double power = 0.0;
};

/// Mean tap powers of a multipath channel. Powers are positive and sum to one,
/// delays are non-negative and strictly increasing.
class PowerDelayProfile {
public:
    explicit PowerDelayProfile(std::vector<Tap> taps);

    /// Exponentially decaying profile, normalized to unit total power.
    /// The defaults approximate an indoor large-open-space NLOS profile.
    static PowerDelayProfile exponential(std::size_t count = 18, double spacing_s = 10e-9,
                                         double decay_s = 40e-9);

    const std::vector<Tap>& taps() const { return taps_; }
    std::size_t size() const { return taps_.size(); }

private:
    std::vector<Tap> taps_;
};

/// A realization of the path gains alpha_l e^{j xi_l}, plus the departure
/// angle used by array geometries.
struct PathGain {
    double delay_s = 0.0;
    std::complex<double> gain;
    double departure_angle = 0.0;
};

using TapSet = std::vector<PathGain>;

/// Draws independent circularly-symmetric complex Gaussian gains with
/// variance equal to the tap powers. Identical (pdp, seed) give identical taps.
TapSet sample_taps(const PowerDelayProfile& pdp, std::uint64_t seed);

/// Evenly spaced tones f_n = f0 + n * df.
struct ToneGrid {
    std::size_t tones = 1;
    double base_hz = 5.18e9;
    double spacing_hz = 1e6;

    static ToneGrid from_bandwidth(std::size_t tones, double base_hz, double bandwidth_hz);
    double frequency(std::size_t n) const { return base_hz + static_cast<double>(n) * spacing_hz; }
    void validate() const;
};

/// Transmit array. A single antenna ignores the spacing; a uniform linear
/// array applies the per-tone phase progression 2 pi m d / lambda_n cos(theta).
struct ArrayGeometry {
    std::size_t antennas = 1;
    double spacing_m = 0.0;

    static ArrayGeometry single() { return {}; }
    static ArrayGeometry ula(std::size_t antennas, double spacing_m);
    static ArrayGeometry half_wavelength(std::size_t antennas, double base_hz);
    void validate() const;
};

/// Complex gains h_{n,m} on an N-tone x M-antenna grid.
class ChannelFreqResponse {
public:
    ChannelFreqResponse() = default;
    explicit ChannelFreqResponse(Eigen::MatrixXcd gains);

    std::size_t tones() const { return static_cast<std::size_t>(gains_.rows()); }
    std::size_t antennas() const { return static_cast<std::size_t>(gains_.cols()); }

    std::complex<double> operator()(std::size_t n, std::size_t m) const { return gains_(n, m); }
    double amplitude(std::size_t n, std::size_t m) const { return std::abs(gains_(n, m)); }
    double phase(std::size_t n, std::size_t m) const { return std::arg(gains_(n, m)); }

    /// ||h_n||, the norm of the row vector of tone n across antennas.
    double tone_norm(std::size_t n) const { return gains_.row(n).norm(); }

    Eigen::MatrixXd amplitudes() const { return gains_.cwiseAbs(); }
    const Eigen::MatrixXcd& matrix() const { return gains_; }

private:
    Eigen::MatrixXcd gains_;
};

ChannelFreqResponse frequency_response(const TapSet& taps, const ToneGrid& grid,
                                       const ArrayGeometry& geom);

/// h_{n,m} = 1 everywhere.
ChannelFreqResponse flat_channel(std::size_t tones, std::size_t antennas);

/// Gains that fade independently across tones and antennas, CN(0, 1) each.
ChannelFreqResponse iid_rayleigh_channel(std::size_t tones, std::size_t antennas,
                                         std::uint64_t seed);

}  // namespace wipt
