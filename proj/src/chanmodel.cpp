#include "wipt/chanmodel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace wipt {

PowerDelayProfile::PowerDelayProfile(std::vector<Tap> taps) : taps_(std::move(taps)) {
    if (taps_.empty())
        throw std::invalid_argument("power-delay profile has no taps");
    double total = 0.0;
    for (std::size_t l = 0; l < taps_.size(); ++l) {
        const Tap& tap = taps_[l];
        if (!(tap.power > 0.0) || !std::isfinite(tap.power))
            throw std::invalid_argument("tap " + std::to_string(l) + " has non-positive power");
        if (!(tap.delay_s >= 0.0) || !std::isfinite(tap.delay_s))
            throw std::invalid_argument("tap " + std::to_string(l) + " has negative delay");
        if (l > 0 && !(tap.delay_s > taps_[l - 1].delay_s))
            throw std::invalid_argument("tap delays must be strictly increasing");
        total += tap.power;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("tap powers must sum to one (got " + std::to_string(total) + ")");
}

PowerDelayProfile PowerDelayProfile::exponential(std::size_t count, double spacing_s,
                                                 double decay_s) {
    if (count == 0)
        throw std::invalid_argument("power-delay profile needs at least one tap");
    if (!(spacing_s > 0.0) || !(decay_s > 0.0))
        throw std::invalid_argument("tap spacing and decay constant must be positive");
    std::vector<Tap> taps(count);
    double total = 0.0;
    for (std::size_t l = 0; l < count; ++l) {
        taps[l].delay_s = static_cast<double>(l) * spacing_s;
        taps[l].power = std::exp(-taps[l].delay_s / decay_s);
        total += taps[l].power;
    }
    for (Tap& tap : taps)
        tap.power /= total;
    return PowerDelayProfile(std::move(taps));
}

TapSet sample_taps(const PowerDelayProfile& pdp, std::uint64_t seed) {
    if (pdp.size() == 0)
        throw std::invalid_argument("power-delay profile has no taps");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

    TapSet taps;
    taps.reserve(pdp.size());
    for (const Tap& tap : pdp.taps()) {
        const double sigma = std::sqrt(tap.power / 2.0);
        const double re = sigma * normal(rng);
        const double im = sigma * normal(rng);
        taps.push_back({tap.delay_s, {re, im}, angle(rng)});
    }
    return taps;
}

ToneGrid ToneGrid::from_bandwidth(std::size_t tones, double base_hz, double bandwidth_hz) {
    if (tones == 0)
        throw std::invalid_argument("tone grid needs at least one tone");
    ToneGrid grid{tones, base_hz, bandwidth_hz / static_cast<double>(tones)};
    grid.validate();
    return grid;
}

void ToneGrid::validate() const {
    if (tones == 0)
        throw std::invalid_argument("tone grid needs at least one tone");
    if (!(base_hz > 0.0))
        throw std::invalid_argument("base frequency must be positive");
    if (!(spacing_hz > 0.0))
        throw std::invalid_argument("tone spacing must be positive");
}

ArrayGeometry ArrayGeometry::ula(std::size_t antennas, double spacing_m) {
    ArrayGeometry geom{antennas, spacing_m};
    geom.validate();
    return geom;
}

ArrayGeometry ArrayGeometry::half_wavelength(std::size_t antennas, double base_hz) {
    return ula(antennas, 0.5 * kSpeedOfLight / base_hz);
}

void ArrayGeometry::validate() const {
    if (antennas == 0)
        throw std::invalid_argument("array needs at least one antenna");
    if (antennas > 1 && !(spacing_m > 0.0))
        throw std::invalid_argument("antenna spacing must be positive for M > 1");
}

ChannelFreqResponse::ChannelFreqResponse(Eigen::MatrixXcd gains) : gains_(std::move(gains)) {
    if (gains_.rows() == 0 || gains_.cols() == 0)
        throw std::invalid_argument("channel response must be at least 1x1");
    if (!gains_.allFinite())
        throw std::invalid_argument("channel response has non-finite entries");
}

ChannelFreqResponse frequency_response(const TapSet& taps, const ToneGrid& grid,
                                       const ArrayGeometry& geom) {
    grid.validate();
    geom.validate();
    if (taps.empty())
        throw std::invalid_argument("tap set is empty");

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.tones),
                                                static_cast<Eigen::Index>(geom.antennas));
    for (std::size_t n = 0; n < grid.tones; ++n) {
        const double f = grid.frequency(n);
        const double w = 2.0 * kPi * f;
        const double wavelength = kSpeedOfLight / f;
        for (std::size_t m = 0; m < geom.antennas; ++m) {
            std::complex<double> acc{0.0, 0.0};
            for (const PathGain& path : taps) {
                const double array_shift = 2.0 * kPi * static_cast<double>(m) * geom.spacing_m /
                                           wavelength * std::cos(path.departure_angle);
                acc += path.gain * std::polar(1.0, -w * path.delay_s + array_shift);
            }
            h(n, m) = acc;
        }
    }
    return ChannelFreqResponse(std::move(h));
}

ChannelFreqResponse flat_channel(std::size_t tones, std::size_t antennas) {
    if (tones == 0 || antennas == 0)
        throw std::invalid_argument("flat channel needs N, M >= 1");
    return ChannelFreqResponse(Eigen::MatrixXcd::Ones(static_cast<Eigen::Index>(tones),
                                                      static_cast<Eigen::Index>(antennas)));
}

ChannelFreqResponse iid_rayleigh_channel(std::size_t tones, std::size_t antennas,
                                         std::uint64_t seed) {
    if (tones == 0 || antennas == 0)
        throw std::invalid_argument("channel needs N, M >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd h(static_cast<Eigen::Index>(tones), static_cast<Eigen::Index>(antennas));
    for (Eigen::Index n = 0; n < h.rows(); ++n)
        for (Eigen::Index m = 0; m < h.cols(); ++m) {
            const double re = normal(rng);
            const double im = normal(rng);
            h(n, m) = {re, im};
        }
    return ChannelFreqResponse(std::move(h));
}

}  // namespace wipt
