#include "wipt/rectenna.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace wipt {

void RectennaModel::validate() const {
    if (!(saturation_current > 0.0) || !(ideality > 0.0) || !(thermal_voltage > 0.0) ||
        !(antenna_resistance > 0.0))
        throw std::invalid_argument("rectenna parameters must be positive");
    if (order != 2 && order != 4)
        throw std::invalid_argument("truncation order must be 2 or 4");
}

double taylor_coefficient(const RectennaModel& model, int i) {
    if (i < 1)
        throw std::invalid_argument("Taylor index must be >= 1");
    double factorial = 1.0;
    for (int j = 2; j <= i; ++j)
        factorial *= j;
    return model.saturation_current /
           (factorial * std::pow(model.ideality * model.thermal_voltage, i));
}

std::map<int, double> taylor_coeffs(const RectennaModel& model) {
    model.validate();
    std::map<int, double> k;
    for (int i = 2; i <= model.order; i += 2)
        k[i] = taylor_coefficient(model, i);
    return k;
}

WaveformDesign WaveformDesign::zeros(std::size_t tones, std::size_t antennas) {
    const auto n = static_cast<Eigen::Index>(tones);
    const auto m = static_cast<Eigen::Index>(antennas);
    WaveformDesign d;
    d.multisine_amp = Eigen::MatrixXd::Zero(n, m);
    d.multisine_phase = Eigen::MatrixXd::Zero(n, m);
    d.ofdm_amp = Eigen::MatrixXd::Zero(n, m);
    d.ofdm_phase = Eigen::MatrixXd::Zero(n, m);
    d.rho = 1.0;
    return d;
}

void WaveformDesign::validate(double power_budget, double rel_tol) const {
    const auto n = multisine_amp.rows();
    const auto m = multisine_amp.cols();
    if (n == 0 || m == 0)
        throw std::invalid_argument("waveform design is empty");
    if (multisine_phase.rows() != n || multisine_phase.cols() != m || ofdm_amp.rows() != n ||
        ofdm_amp.cols() != m || ofdm_phase.rows() != n || ofdm_phase.cols() != m)
        throw std::invalid_argument("waveform matrices have inconsistent shapes");
    if ((multisine_amp.array() < 0.0).any() || (ofdm_amp.array() < 0.0).any())
        throw std::invalid_argument("waveform amplitudes must be non-negative");
    if (!multisine_amp.allFinite() || !ofdm_amp.allFinite() || !multisine_phase.allFinite() ||
        !ofdm_phase.allFinite())
        throw std::invalid_argument("waveform has non-finite entries");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("power-splitting ratio must lie in [0, 1]");
    if (power_budget > 0.0 && total_power() > power_budget * (1.0 + rel_tol))
        throw std::invalid_argument("waveform exceeds the transmit power budget");
}

std::span<const std::array<int, 4>> quad_indices(std::size_t tones) {
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<std::array<int, 4>>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(tones);
    if (it == cache.end()) {
        std::vector<std::array<int, 4>> quads;
        const int n = static_cast<int>(tones);
        quads.reserve(static_cast<std::size_t>((2 * n * n * n + n) / 3));
        for (int n0 = 0; n0 < n; ++n0)
            for (int n1 = 0; n1 < n; ++n1)
                for (int n2 = 0; n2 < n; ++n2) {
                    const int n3 = n0 + n1 - n2;
                    if (n3 >= 0 && n3 < n)
                        quads.push_back({n0, n1, n2, n3});
                }
        it = cache.emplace(tones, std::move(quads)).first;
    }
    return it->second;
}

Eigen::VectorXcd received_amplitudes(const ChannelFreqResponse& channel,
                                     const Eigen::MatrixXd& amp, const Eigen::MatrixXd& phase) {
    const auto n = static_cast<Eigen::Index>(channel.tones());
    const auto m = static_cast<Eigen::Index>(channel.antennas());
    if (amp.rows() != n || amp.cols() != m || phase.rows() != n || phase.cols() != m)
        throw std::invalid_argument("waveform and channel dimensions disagree");
    Eigen::VectorXcd c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (Eigen::Index j = 0; j < m; ++j)
            acc += channel(i, j) * std::polar(amp(i, j), phase(i, j));
        c(i) = acc;
    }
    return c;
}

namespace {

void check_dimensions(const WaveformDesign& design, const ChannelFreqResponse& channel) {
    design.validate();
    if (design.tones() != channel.tones() || design.antennas() != channel.antennas())
        throw std::invalid_argument("waveform and channel dimensions disagree");
}

// A{y^2} of a deterministic multisine with received amplitudes c.
double multisine_second_moment(const Eigen::VectorXcd& c) { return 0.5 * c.squaredNorm(); }

// A{y^4} of a deterministic multisine: 3/8 Re sum_{n0+n1=n2+n3} c0 c1 c2* c3*.
double multisine_fourth_moment(const Eigen::VectorXcd& c) {
    double acc = 0.0;
    for (const auto& q : quad_indices(static_cast<std::size_t>(c.size()))) {
        const std::complex<double> term = c(q[0]) * c(q[1]) * std::conj(c(q[2])) * std::conj(c(q[3]));
        acc += term.real();
    }
    return 0.375 * acc;
}

}  // namespace

ZdcTerms zdc_multisine_terms(const WaveformDesign& design, const ChannelFreqResponse& channel,
                             const RectennaModel& model) {
    check_dimensions(design, channel);
    model.validate();
    const Eigen::VectorXcd c =
        received_amplitudes(channel, design.multisine_amp, design.multisine_phase);
    const double r = model.antenna_resistance;
    ZdcTerms z;
    z.quadratic = taylor_coefficient(model, 2) * r * multisine_second_moment(c);
    if (model.order >= 4)
        z.quartic = taylor_coefficient(model, 4) * r * r * multisine_fourth_moment(c);
    return z;
}

double zdc_multisine(const WaveformDesign& design, const ChannelFreqResponse& channel,
                     const RectennaModel& model) {
    return zdc_multisine_terms(design, channel, model).total();
}

ZdcTerms zdc_ofdm_terms(const WaveformDesign& design, const ChannelFreqResponse& channel,
                        const RectennaModel& model) {
    check_dimensions(design, channel);
    model.validate();
    const double sum = received_amplitudes(channel, design.ofdm_amp, design.ofdm_phase).squaredNorm();
    const double r = model.antenna_resistance;
    ZdcTerms z;
    z.quadratic = taylor_coefficient(model, 2) * r * 0.5 * sum;
    if (model.order >= 4)
        z.quartic = taylor_coefficient(model, 4) * r * r * 0.75 * sum * sum;
    return z;
}

double zdc_ofdm(const WaveformDesign& design, const ChannelFreqResponse& channel,
                const RectennaModel& model) {
    return zdc_ofdm_terms(design, channel, model).total();
}

ZdcTerms zdc_superposed_terms(const WaveformDesign& design, const ChannelFreqResponse& channel,
                              const RectennaModel& model) {
    check_dimensions(design, channel);
    model.validate();
    const Eigen::VectorXcd cp =
        received_amplitudes(channel, design.multisine_amp, design.multisine_phase);
    const double ofdm_sum =
        received_amplitudes(channel, design.ofdm_amp, design.ofdm_phase).squaredNorm();

    const double a2p = multisine_second_moment(cp);
    const double a2i = 0.5 * ofdm_sum;
    const double r = model.antenna_resistance;
    const double rho = design.rho;

    ZdcTerms z;
    z.quadratic = taylor_coefficient(model, 2) * rho * r * (a2p + a2i);
    if (model.order >= 4) {
        const double a4p = multisine_fourth_moment(cp);
        const double a4i = 0.75 * ofdm_sum * ofdm_sum;
        z.quartic = taylor_coefficient(model, 4) * rho * rho * r * r * (a4p + a4i + 6.0 * a2p * a2i);
    }
    return z;
}

double zdc_superposed(const WaveformDesign& design, const ChannelFreqResponse& channel,
                      const RectennaModel& model) {
    return zdc_superposed_terms(design, channel, model).total();
}

namespace {

void check_rate_inputs(double rho, std::span<const double> noise, std::size_t tones) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("power-splitting ratio must lie in [0, 1]");
    if (noise.size() != tones)
        throw std::invalid_argument("noise vector length differs from tone count");
    for (double s : noise)
        if (!(s > 0.0))
            throw std::invalid_argument("noise variance must be positive");
}

}  // namespace

double rate_pc(const Eigen::MatrixXd& ofdm_amp, const Eigen::MatrixXd& ofdm_phase, double rho,
               const ChannelFreqResponse& channel, std::span<const double> noise) {
    check_rate_inputs(rho, noise, channel.tones());
    const Eigen::VectorXcd c = received_amplitudes(channel, ofdm_amp, ofdm_phase);
    double rate = 0.0;
    for (Eigen::Index n = 0; n < c.size(); ++n)
        rate += std::log2(1.0 + (1.0 - rho) * std::norm(c(n)) / noise[static_cast<std::size_t>(n)]);
    return rate;
}

double rate_pc(const Eigen::MatrixXd& ofdm_amp, const Eigen::MatrixXd& ofdm_phase, double rho,
               const ChannelFreqResponse& channel, double noise) {
    const std::vector<double> flat(channel.tones(), noise);
    return rate_pc(ofdm_amp, ofdm_phase, rho, channel, flat);
}

double rate_nc(const Eigen::MatrixXd& multisine_amp, const Eigen::MatrixXd& ofdm_amp,
               const Eigen::MatrixXd& multisine_phase, const Eigen::MatrixXd& ofdm_phase,
               double rho, const ChannelFreqResponse& channel, std::span<const double> noise) {
    check_rate_inputs(rho, noise, channel.tones());
    const Eigen::VectorXcd ci = received_amplitudes(channel, ofdm_amp, ofdm_phase);
    const Eigen::VectorXcd cp = received_amplitudes(channel, multisine_amp, multisine_phase);
    double rate = 0.0;
    for (Eigen::Index n = 0; n < ci.size(); ++n) {
        const double interference = noise[static_cast<std::size_t>(n)] + (1.0 - rho) * std::norm(cp(n));
        rate += std::log2(1.0 + (1.0 - rho) * std::norm(ci(n)) / interference);
    }
    return rate;
}

double rate_nc(const Eigen::MatrixXd& multisine_amp, const Eigen::MatrixXd& ofdm_amp,
               const Eigen::MatrixXd& multisine_phase, const Eigen::MatrixXd& ofdm_phase,
               double rho, const ChannelFreqResponse& channel, double noise) {
    const std::vector<double> flat(channel.tones(), noise);
    return rate_nc(multisine_amp, ofdm_amp, multisine_phase, ofdm_phase, rho, channel, flat);
}

Eigen::MatrixXd kfactor_map(const Eigen::MatrixXd& multisine_amp, const Eigen::MatrixXd& ofdm_amp) {
    if (multisine_amp.rows() != ofdm_amp.rows() || multisine_amp.cols() != ofdm_amp.cols())
        throw std::invalid_argument("amplitude matrices have different shapes");
    Eigen::MatrixXd k(multisine_amp.rows(), multisine_amp.cols());
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
            const double sp2 = multisine_amp(i, j) * multisine_amp(i, j);
            const double si2 = ofdm_amp(i, j) * ofdm_amp(i, j);
            if (sp2 == 0.0)
                k(i, j) = 0.0;
            else if (si2 == 0.0)
                k(i, j) = std::numeric_limits<double>::infinity();
            else
                k(i, j) = sp2 / si2;
        }
    return k;
}

}  // namespace wipt
