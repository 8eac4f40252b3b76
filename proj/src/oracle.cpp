#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wipt/parallel.hpp"
#include "wipt/rectenna.hpp"

namespace wipt {

void OracleConfig::validate(std::size_t tones) const {
    if (f0_multiple < 1)
        throw std::invalid_argument("oracle f0 multiple must be >= 1");
    if (symbol_draws < 1)
        throw std::invalid_argument("oracle needs at least one symbol draw");
    const long guard = 4L * (static_cast<long>(f0_multiple) + static_cast<long>(tones));
    if (samples_per_period < guard)
        throw std::invalid_argument("oracle grid under-sampled: need >= " + std::to_string(guard) +
                                    " samples per period");
}

namespace {

constexpr int kDrawsPerChunk = 2048;

struct RunningMoments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    void merge(const RunningMoments& other) {
        if (other.count == 0.0)
            return;
        const double total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * other.count / total;
        m2 += other.m2 + delta * delta * count * other.count / total;
        count = total;
    }
};

// Carrier tables cos/sin(2 pi (K + n) j / S), row-major by tone.
struct CarrierTable {
    int samples = 0;
    std::vector<double> cos_tab;
    std::vector<double> sin_tab;

    CarrierTable(std::size_t tones, int f0_multiple, int samples_per_period)
        : samples(samples_per_period),
          cos_tab(tones * static_cast<std::size_t>(samples_per_period)),
          sin_tab(tones * static_cast<std::size_t>(samples_per_period)) {
        for (std::size_t n = 0; n < tones; ++n) {
            const long harmonic = f0_multiple + static_cast<long>(n);
            for (int j = 0; j < samples; ++j) {
                // Reduce the phase index exactly before converting to radians.
                const long idx = (harmonic * j) % samples;
                const double angle = 2.0 * kPi * static_cast<double>(idx) / samples;
                cos_tab[n * static_cast<std::size_t>(samples) + static_cast<std::size_t>(j)] = std::cos(angle);
                sin_tab[n * static_cast<std::size_t>(samples) + static_cast<std::size_t>(j)] = std::sin(angle);
            }
        }
    }

    // y[j] += Re{c e^{j w_n t_j}}
    void accumulate(std::size_t n, std::complex<double> c, std::vector<double>& y) const {
        const double* ct = &cos_tab[n * static_cast<std::size_t>(samples)];
        const double* st = &sin_tab[n * static_cast<std::size_t>(samples)];
        const double re = c.real();
        const double im = c.imag();
        for (int j = 0; j < samples; ++j)
            y[static_cast<std::size_t>(j)] += re * ct[j] - im * st[j];
    }
};

double harvest_average(const std::vector<double>& y, double a2, double a4) {
    double acc = 0.0;
    for (double v : y) {
        const double v2 = v * v;
        acc += a2 * v2 + a4 * v2 * v2;
    }
    return acc / static_cast<double>(y.size());
}

}  // namespace

OracleEstimate oracle_zdc_estimate(const WaveformDesign& design, const ChannelFreqResponse& channel,
                                   const RectennaModel& model, const OracleConfig& cfg,
                                   std::uint64_t seed) {
    design.validate();
    model.validate();
    const std::size_t tones = channel.tones();
    if (design.tones() != tones || design.antennas() != channel.antennas())
        throw std::invalid_argument("waveform and channel dimensions disagree");
    cfg.validate(tones);

    const double r = model.antenna_resistance;
    const double a2 = taylor_coefficient(model, 2) * design.rho * r;
    const double a4 = model.order >= 4 ? taylor_coefficient(model, 4) * design.rho * design.rho * r * r : 0.0;

    const CarrierTable carriers(tones, cfg.f0_multiple, cfg.samples_per_period);
    const Eigen::VectorXcd cp = received_amplitudes(channel, design.multisine_amp, design.multisine_phase);
    const Eigen::VectorXcd ci = received_amplitudes(channel, design.ofdm_amp, design.ofdm_phase);

    std::vector<double> y_power(static_cast<std::size_t>(cfg.samples_per_period), 0.0);
    for (std::size_t n = 0; n < tones; ++n)
        carriers.accumulate(n, cp(static_cast<Eigen::Index>(n)), y_power);

    if (ci.squaredNorm() == 0.0)
        return {harvest_average(y_power, a2, a4), 0.0};

    const int draws = cfg.symbol_draws;
    std::vector<std::vector<int>> magnitude_strata;
    std::vector<std::vector<int>> phase_strata;
    if (cfg.sampling == SymbolSampling::latin_hypercube) {
        std::mt19937_64 master(derive_seed(seed, 0xA11CE));
        for (std::size_t n = 0; n < tones; ++n) {
            std::vector<int> mag(static_cast<std::size_t>(draws));
            std::vector<int> ph(static_cast<std::size_t>(draws));
            for (int d = 0; d < draws; ++d)
                mag[static_cast<std::size_t>(d)] = ph[static_cast<std::size_t>(d)] = d;
            std::shuffle(mag.begin(), mag.end(), master);
            std::shuffle(ph.begin(), ph.end(), master);
            magnitude_strata.push_back(std::move(mag));
            phase_strata.push_back(std::move(ph));
        }
    }

    const std::size_t chunks = static_cast<std::size_t>((draws + kDrawsPerChunk - 1) / kDrawsPerChunk);
    std::vector<RunningMoments> partial(chunks);
    parallel_for(chunks, cfg.threads, [&](std::size_t chunk) {
        std::mt19937_64 rng(derive_seed(seed, chunk));
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::vector<double> y(y_power.size());
        const int first = static_cast<int>(chunk) * kDrawsPerChunk;
        const int last = std::min(draws, first + kDrawsPerChunk);
        RunningMoments moments;
        for (int d = first; d < last; ++d) {
            std::copy(y_power.begin(), y_power.end(), y.begin());
            for (std::size_t n = 0; n < tones; ++n) {
                std::complex<double> symbol;
                if (cfg.sampling == SymbolSampling::latin_hypercube) {
                    const double u = (magnitude_strata[n][static_cast<std::size_t>(d)] + uniform(rng)) / draws;
                    const double v = (phase_strata[n][static_cast<std::size_t>(d)] + uniform(rng)) / draws;
                    symbol = std::polar(std::sqrt(-std::log1p(-u)), 2.0 * kPi * v);
                } else {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    symbol = {re, im};
                }
                carriers.accumulate(n, ci(static_cast<Eigen::Index>(n)) * symbol, y);
            }
            moments.add(harvest_average(y, a2, a4));
        }
        partial[chunk] = moments;
    });

    RunningMoments total;
    for (const auto& m : partial)
        total.merge(m);
    const double variance = total.count > 1.0 ? total.m2 / (total.count - 1.0) : 0.0;
    return {total.mean, std::sqrt(variance / total.count)};
}

double oracle_zdc(const WaveformDesign& design, const ChannelFreqResponse& channel,
                  const RectennaModel& model, const OracleConfig& cfg, std::uint64_t seed) {
    return oracle_zdc_estimate(design, channel, model, cfg, seed).mean;
}

}  // namespace wipt
