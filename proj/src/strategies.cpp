#include "wipt/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wipt {

namespace {

void check_power(double power) {
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("transmit power must be positive");
}

}  // namespace

MatchedPhases matched_phases(const ChannelFreqResponse& channel) {
    const Eigen::MatrixXd phi = -channel.matrix().unaryExpr([](std::complex<double> h) { return std::arg(h); });
    return {phi, phi};
}

std::size_t strongest_tone(const ChannelFreqResponse& channel) {
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t n = 0; n < channel.tones(); ++n) {
        const double g = channel.tone_norm(n);
        if (g > best_gain) {
            best_gain = g;
            best = n;
        }
    }
    if (!(best_gain > 0.0))
        throw std::invalid_argument("channel is identically zero");
    return best;
}

Eigen::MatrixXcd ass_weights(const ChannelFreqResponse& channel, double power) {
    check_power(power);
    const std::size_t nbar = strongest_tone(channel);
    const auto row = static_cast<Eigen::Index>(nbar);
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(channel.tones()),
                                                static_cast<Eigen::Index>(channel.antennas()));
    w.row(row) = std::sqrt(2.0 * power) * channel.matrix().row(row).conjugate() / channel.tone_norm(nbar);
    return w;
}

AmplitudePhase ass_waveform(const ChannelFreqResponse& channel, double power) {
    const Eigen::MatrixXcd w = ass_weights(channel, power);
    return {w.cwiseAbs(), w.unaryExpr([](std::complex<double> z) { return std::arg(z); })};
}

AmplitudePhase up_weights(std::size_t tones, double power, std::size_t antennas) {
    check_power(power);
    if (tones < 1 || antennas < 1)
        throw std::invalid_argument("tone and antenna counts must be >= 1");
    const auto n = static_cast<Eigen::Index>(tones);
    const auto m = static_cast<Eigen::Index>(antennas);
    const double amp = std::sqrt(2.0 * power / static_cast<double>(tones * antennas));
    return {Eigen::MatrixXd::Constant(n, m, amp), Eigen::MatrixXd::Zero(n, m)};
}

AmplitudePhase upmf_weights(const ChannelFreqResponse& channel, double power) {
    check_power(power);
    const std::size_t tones = channel.tones();
    const std::size_t antennas = channel.antennas();
    const double per_tone = std::sqrt(2.0 * power / static_cast<double>(tones));
    AmplitudePhase out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tones), static_cast<Eigen::Index>(antennas)),
                       matched_phases(channel).multisine};
    for (std::size_t n = 0; n < tones; ++n) {
        const double norm = channel.tone_norm(n);
        for (std::size_t m = 0; m < antennas; ++m) {
            const auto i = static_cast<Eigen::Index>(n);
            const auto j = static_cast<Eigen::Index>(m);
            out.amp(i, j) = norm > 0.0 ? per_tone * channel.amplitude(n, m) / norm
                                       : per_tone / std::sqrt(static_cast<double>(antennas));
        }
    }
    return out;
}

std::vector<double> waterfill_levels(std::span<const double> gains, double noise, double budget) {
    if (!(budget > 0.0))
        throw std::invalid_argument("water-filling budget must be positive");
    if (!(noise > 0.0))
        throw std::invalid_argument("noise variance must be positive");
    double max_floor = 0.0;
    bool any = false;
    for (double g : gains) {
        if (g < 0.0 || !std::isfinite(g))
            throw std::invalid_argument("channel gains must be non-negative");
        if (g > 0.0) {
            any = true;
            max_floor = std::max(max_floor, noise / g);
        }
    }
    if (!any)
        throw std::invalid_argument("channel is identically zero");

    auto allocate = [&](double mu, std::vector<double>& p) {
        double total = 0.0;
        for (std::size_t n = 0; n < gains.size(); ++n) {
            p[n] = gains[n] > 0.0 ? std::max(0.0, mu - noise / gains[n]) : 0.0;
            total += p[n];
        }
        return total;
    };

    std::vector<double> p(gains.size());
    double lo = 0.0;
    double hi = max_floor + budget;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (allocate(mid, p) > budget)
            hi = mid;
        else
            lo = mid;
    }
    const double total = allocate(0.5 * (lo + hi), p);
    for (double& v : p)
        v *= budget / total;
    return p;
}

namespace {

std::vector<double> tone_gains(const ChannelFreqResponse& channel) {
    std::vector<double> g(channel.tones());
    for (std::size_t n = 0; n < g.size(); ++n)
        g[n] = channel.matrix().row(static_cast<Eigen::Index>(n)).squaredNorm();
    return g;
}

}  // namespace

AmplitudePhase waterfilling(const ChannelFreqResponse& channel, double power, double noise) {
    check_power(power);
    const std::vector<double> gains = tone_gains(channel);
    const std::vector<double> levels = waterfill_levels(gains, noise, 2.0 * power);
    const std::size_t antennas = channel.antennas();
    AmplitudePhase out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(channel.tones()),
                                             static_cast<Eigen::Index>(antennas)),
                       matched_phases(channel).ofdm};
    for (std::size_t n = 0; n < channel.tones(); ++n) {
        if (levels[n] <= 0.0)
            continue;
        const double norm = std::sqrt(gains[n]);
        for (std::size_t m = 0; m < antennas; ++m)
            out.amp(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) =
                std::sqrt(levels[n]) * channel.amplitude(n, m) / norm;
    }
    return out;
}

double max_rate(const ChannelFreqResponse& channel, double power, double noise) {
    check_power(power);
    const std::vector<double> gains = tone_gains(channel);
    const std::vector<double> levels = waterfill_levels(gains, noise, 2.0 * power);
    double rate = 0.0;
    for (std::size_t n = 0; n < gains.size(); ++n)
        rate += std::log2(1.0 + levels[n] * gains[n] / noise);
    return rate;
}

const char* to_string(WiptMode mode) {
    switch (mode) {
        case WiptMode::pc_joint: return "PC";
        case WiptMode::pc_decoupled: return "PC-decoupled";
        case WiptMode::nc: return "NC";
    }
    return "PC";
}

}  // namespace wipt
