#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "wipt/parallel.hpp"
#include "wipt/rateenergy.hpp"

namespace wipt {

double papr_multisine_db(std::size_t tones) {
    if (tones < 1)
        throw std::invalid_argument("PAPR needs at least one tone");
    return 10.0 * std::log10(2.0 * static_cast<double>(tones));
}

double OfdmPaprSamples::exceedance(double threshold_db) const {
    if (papr_db.empty())
        return 0.0;
    const auto above = papr_db.end() - std::upper_bound(papr_db.begin(), papr_db.end(), threshold_db);
    return static_cast<double>(above) / static_cast<double>(papr_db.size());
}

double OfdmPaprSamples::quantile(double probability) const {
    if (papr_db.empty())
        throw std::logic_error("no PAPR samples");
    const auto count = static_cast<double>(papr_db.size());
    // Keep at most floor(p * count) samples strictly above the threshold.
    const auto allowed = static_cast<std::size_t>(std::floor(probability * count));
    const std::size_t index = papr_db.size() - 1 - std::min(allowed, papr_db.size() - 1);
    return papr_db[index];
}

namespace {

constexpr std::size_t kTrialsPerChunk = 4096;

}  // namespace

OfdmPaprSamples papr_samples_ofdm(std::size_t tones, std::size_t trials, std::uint64_t seed, int oversampling,
                                  int threads) {
    if (tones < 1)
        throw std::invalid_argument("PAPR needs at least one tone");
    if (trials < 1)
        throw std::invalid_argument("PAPR needs at least one trial");
    if (oversampling < 1)
        throw std::invalid_argument("oversampling factor must be >= 1");

    const std::size_t length = tones * static_cast<std::size_t>(oversampling);
    OfdmPaprSamples out;
    out.papr_db.resize(trials);
    const std::size_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    parallel_for(chunks, threads, [&](std::size_t chunk) {
        std::mt19937_64 rng(derive_seed(seed, chunk));
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        Eigen::FFT<double> fft;
        std::vector<std::complex<double>> spectrum(length);
        std::vector<std::complex<double>> samples(length);
        const std::size_t first = chunk * kTrialsPerChunk;
        const std::size_t last = std::min(trials, first + kTrialsPerChunk);
        for (std::size_t t = first; t < last; ++t) {
            std::fill(spectrum.begin(), spectrum.end(), std::complex<double>{});
            double energy = 0.0;
            for (std::size_t n = 0; n < tones; ++n) {
                const double re = normal(rng);
                const double im = normal(rng);
                spectrum[n] = {re, im};
                energy += re * re + im * im;
            }
            fft.inv(samples, spectrum);  // scaled by 1 / length
            double peak = 0.0;
            for (const auto& s : samples)
                peak = std::max(peak, std::norm(s));
            peak *= static_cast<double>(length) * static_cast<double>(length);
            // Passband peak over mean power: max|x_B|^2 / (sum |x_n|^2 / 2).
            out.papr_db[t] = 10.0 * std::log10(2.0 * peak / energy);
        }
    });
    std::sort(out.papr_db.begin(), out.papr_db.end());
    return out;
}

std::vector<CcdfPoint> papr_ccdf_ofdm(std::size_t tones, std::size_t trials, std::uint64_t seed, double step_db,
                                      int oversampling, int threads) {
    if (!(step_db > 0.0))
        throw std::invalid_argument("CCDF step must be positive");
    const OfdmPaprSamples samples = papr_samples_ofdm(tones, trials, seed, oversampling, threads);
    std::vector<CcdfPoint> table;
    const double lo = std::floor(samples.papr_db.front() / step_db) * step_db;
    const double hi = samples.papr_db.back();
    for (double x = lo; x <= hi + step_db; x += step_db)
        table.push_back({x, samples.exceedance(x)});
    return table;
}

}  // namespace wipt
