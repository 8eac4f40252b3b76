#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wipt/strategies.hpp"

namespace wipt {

namespace {

using gp::Monomial;
using gp::Posynomial;
using gp::VarId;

enum class RateKind { none, pc, nc };

constexpr double kSplitFloor = 1e-8;
constexpr double kInitialPowerScale = 0.999;
constexpr double kRepairPowerScale = 1.0 - 1e-9;

struct ProgramShape {
    bool multisine = true;
    bool ofdm = true;
    bool split = true;  // rho and rho_bar are variables; otherwise rho = 1
    RateKind rate = RateKind::none;
};

// Matched-phase WIPT program on an amplitude grid A (N x M). Amplitudes of
// both components, the splitting ratios, t0 and (for NC) one auxiliary
// variable per tone are GP variables.
class WiptProgram {
public:
    WiptProgram(const Eigen::MatrixXd& gains, const RectennaModel& model, double power, double noise,
                double rate_target, ProgramShape shape, double floor_fraction)
        : gains_(gains), power_(power), noise_(noise), rate_target_(rate_target), shape_(shape) {
        tones_ = static_cast<std::size_t>(gains.rows());
        antennas_ = static_cast<std::size_t>(gains.cols());
        amp_floor_ = floor_fraction * std::sqrt(2.0 * power / static_cast<double>(tones_ * antennas_));
        use_aux_ = shape.rate == RateKind::nc && shape.multisine;
        build_layout();
        build_zdc(model);
        build_constraints();
    }

    std::size_t size() const { return floors_.size(); }
    double amp_floor() const { return amp_floor_; }
    double zdc(std::span<const double> x) const { return zdc_.evaluate(x); }

    // Complete GP point from amplitudes and ratios; t0 and the auxiliaries
    // are placed strictly inside their constraints.
    std::vector<double> point(const Eigen::MatrixXd& sp, const Eigen::MatrixXd& si, double rho,
                              double rho_bar) const {
        std::vector<double> x(size(), 1.0);
        for (std::size_t n = 0; n < tones_; ++n)
            for (std::size_t m = 0; m < antennas_; ++m) {
                const auto i = static_cast<Eigen::Index>(n);
                const auto j = static_cast<Eigen::Index>(m);
                if (shape_.multisine)
                    x[sp_[idx(n, m)]] = std::max(sp(i, j), 2.0 * amp_floor_);
                if (shape_.ofdm)
                    x[si_[idx(n, m)]] = std::max(si(i, j), 2.0 * amp_floor_);
            }
        if (shape_.split) {
            x[rho_] = std::max(rho, 2.0 * kSplitFloor);
            x[rho_bar_] = std::max(rho_bar, 2.0 * kSplitFloor);
        }
        refresh(x);
        return x;
    }

    void refresh(std::vector<double>& x) const {
        x[t0_] = 1.0;
        x[t0_] = zdc_.evaluate(x) * (1.0 - 1e-6);
        if (use_aux_)
            for (std::size_t n = 0; n < tones_; ++n) {
                x[aux_var_[n]] = 1.0;
                x[aux_var_[n]] = aux_[n].evaluate(x) * (1.0 + 1e-9);
            }
    }

    gp::SequentialProblem sequential(bool extrapolate) const {
        gp::SequentialProblem sp;
        sp.objective = [this](std::span<const double> x) { return zdc(x); };
        sp.condense_at = [this](std::span<const double> prev) { return condense_at(prev); };
        if (extrapolate)
            sp.project = [this](std::vector<double>& x) { return project(x); };
        return sp;
    }

    // Scales amplitudes onto the power budget and the ratios onto the split
    // constraint, then checks floors and the rate target.
    bool project(std::vector<double>& x) const {
        for (double v : x)
            if (!std::isfinite(v) || !(v > 0.0))
                return false;
        const double inner = 1.0 - 1e-9;
        const double load = budget_.evaluate(x);
        if (load >= inner) {
            const double c = std::sqrt(inner / load);
            for (VarId v : sp_)
                x[v] *= c;
            for (VarId v : si_)
                x[v] *= c;
        }
        for (VarId v : sp_)
            if (!(x[v] > amp_floor_))
                return false;
        for (VarId v : si_)
            if (!(x[v] > amp_floor_))
                return false;
        if (shape_.split) {
            // z_DC grows with rho, so the decoder keeps only what the rate needs.
            double need = 2.0 * kSplitFloor;
            if (shape_.rate != RateKind::none) {
                const Eigen::MatrixXd sp = raw(x, sp_, shape_.multisine);
                const Eigen::MatrixXd si = raw(x, si_, shape_.ofdm);
                double hi = inner - 2.0 * kSplitFloor;
                if (!(rate(sp, si, hi) >= rate_target_))
                    return false;
                double lo = 2.0 * kSplitFloor;
                if (!(rate(sp, si, lo) >= rate_target_)) {
                    for (int it = 0; it < 100 && hi - lo > 1e-13 * hi; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (rate(sp, si, mid) >= rate_target_ ? hi : lo) = mid;
                    }
                    lo = hi;
                }
                need = lo;
            }
            x[rho_bar_] = need;
            x[rho_] = inner - need;
            if (!(x[rho_] > 2.0 * kSplitFloor))
                return false;
        }
        refresh(x);
        return true;
    }

    Eigen::MatrixXd multisine(std::span<const double> x) const { return extract(x, sp_, shape_.multisine); }
    Eigen::MatrixXd ofdm(std::span<const double> x) const { return extract(x, si_, shape_.ofdm); }
    double rho(std::span<const double> x) const { return shape_.split ? x[rho_] : 1.0; }
    double rho_bar(std::span<const double> x) const { return shape_.split ? x[rho_bar_] : 0.0; }

    // Rate seen by the GP: the decoder branch receives the fraction rho_bar.
    double rate(const Eigen::MatrixXd& sp, const Eigen::MatrixXd& si, double rho_bar) const {
        double r = 0.0;
        for (Eigen::Index n = 0; n < gains_.rows(); ++n) {
            const double c = std::pow(gains_.row(n).dot(si.row(n)), 2);
            const double d = shape_.rate == RateKind::nc ? std::pow(gains_.row(n).dot(sp.row(n)), 2) : 0.0;
            r += std::log2(1.0 + rho_bar * c / (noise_ + rho_bar * d));
        }
        return r;
    }

private:
    std::size_t idx(std::size_t n, std::size_t m) const { return n * antennas_ + m; }

    void build_layout() {
        VarId next = 0;
        if (shape_.multisine)
            for (std::size_t k = 0; k < tones_ * antennas_; ++k)
                sp_.push_back(next++);
        if (shape_.ofdm)
            for (std::size_t k = 0; k < tones_ * antennas_; ++k)
                si_.push_back(next++);
        if (shape_.split) {
            rho_ = next++;
            rho_bar_ = next++;
        }
        t0_ = next++;
        if (use_aux_)
            for (std::size_t n = 0; n < tones_; ++n)
                aux_var_.push_back(next++);

        floors_.assign(next, 0.0);
        for (VarId v : sp_)
            floors_[v] = amp_floor_;
        for (VarId v : si_)
            floors_[v] = amp_floor_;
        if (shape_.split) {
            floors_[rho_] = kSplitFloor;
            floors_[rho_bar_] = kSplitFloor;
        }
    }

    // X_n = sum_m A_{n,m} s_{n,m}, the received amplitude of tone n.
    std::vector<Posynomial> received(const std::vector<VarId>& vars) const {
        std::vector<Posynomial> x(tones_);
        if (vars.empty())
            return x;
        for (std::size_t n = 0; n < tones_; ++n)
            for (std::size_t m = 0; m < antennas_; ++m) {
                const double a = gains_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
                if (a > 0.0)
                    x[n].add(Monomial(a, {{vars[idx(n, m)], 1.0}}));
            }
        return x;
    }

    static Posynomial sum_of_squares(const std::vector<Posynomial>& x) {
        Posynomial s;
        for (const auto& p : x)
            if (!p.empty())
                s += p * p;
        return s;
    }

    void build_zdc(const RectennaModel& model) {
        const double r = model.antenna_resistance;
        const double k2 = taylor_coefficient(model, 2);
        const double k4 = taylor_coefficient(model, 4);
        const bool quartic = model.order >= 4;
        const Monomial rho1 = shape_.split ? Monomial::variable(rho_) : Monomial(1.0);
        const Monomial rho2 = shape_.split ? Monomial::variable(rho_, 2.0) : Monomial(1.0);

        xp_ = received(sp_);
        xi_ = received(si_);
        const Posynomial s2p = sum_of_squares(xp_);
        const Posynomial s2i = sum_of_squares(xi_);

        if (!s2p.empty())
            zdc_ += s2p * (0.5 * k2 * r * rho1);
        if (!s2i.empty())
            zdc_ += s2i * (0.5 * k2 * r * rho1);
        if (quartic) {
            if (!s2p.empty()) {
                const Monomial scale = 0.375 * k4 * r * r * rho2;
                for (const auto& q : quad_indices(tones_)) {
                    if (xp_[q[0]].empty() || xp_[q[1]].empty() || xp_[q[2]].empty() || xp_[q[3]].empty())
                        continue;
                    zdc_ += (xp_[q[0]] * xp_[q[1]]) * (xp_[q[2]] * xp_[q[3]]) * scale;
                }
            }
            if (!s2i.empty())
                zdc_ += (s2i * s2i) * (0.75 * k4 * r * r * rho2);
            if (!s2p.empty() && !s2i.empty())
                zdc_ += (s2p * s2i) * (1.5 * k4 * r * r * rho2);
        }
        if (zdc_.empty())
            throw std::invalid_argument("harvested current is identically zero for this channel");
    }

    void build_constraints() {
        Posynomial budget;
        for (VarId v : sp_)
            budget.add(Monomial(0.5 / power_, {{v, 2.0}}));
        for (VarId v : si_)
            budget.add(Monomial(0.5 / power_, {{v, 2.0}}));
        budget_ = budget;
        posynomials_.push_back(budget);
        if (shape_.split) {
            Posynomial split;
            split.add(Monomial::variable(rho_));
            split.add(Monomial::variable(rho_bar_));
            posynomials_.push_back(split);
        }
        if (shape_.rate == RateKind::none)
            return;

        const Monomial snr = Monomial(1.0 / noise_, {{rho_bar_, 1.0}});
        for (std::size_t n = 0; n < tones_; ++n) {
            Posynomial f(Monomial(1.0));
            if (!xi_[n].empty())
                f += (xi_[n] * xi_[n]) * snr;
            if (shape_.rate == RateKind::nc && !xp_[n].empty())
                f += (xp_[n] * xp_[n]) * snr;
            rate_terms_.push_back(f);
            if (use_aux_) {
                Posynomial a(Monomial(1.0));
                if (!xp_[n].empty())
                    a += (xp_[n] * xp_[n]) * snr;
                aux_.push_back(a);
            }
        }
        if (use_aux_)
            for (std::size_t n = 0; n < tones_; ++n)
                posynomials_.push_back(aux_[n] * Monomial::variable(aux_var_[n], -1.0));
    }

    gp::CondensedStep condense_at(std::span<const double> prev) const {
        std::vector<double> x(prev.begin(), prev.end());
        refresh(x);
        gp::CondensedStep step;
        gp::GpProblem& p = step.problem;
        p.num_vars = size();
        p.objective = Monomial::variable(t0_, -1.0);
        p.monomial_constraints.push_back(Monomial::variable(t0_) / gp::condense(zdc_, x));
        if (shape_.rate != RateKind::none) {
            Monomial rate = Monomial(std::exp2(rate_target_));
            for (const auto& f : rate_terms_)
                rate *= gp::condense(f, x).inverse();
            for (VarId v : aux_var_)
                rate *= Monomial::variable(v);
            p.monomial_constraints.push_back(rate);
        }
        p.posynomial_constraints = posynomials_;
        p.floors = floors_;
        step.start = std::move(x);
        return step;
    }

    Eigen::MatrixXd raw(std::span<const double> x, const std::vector<VarId>& vars, bool present) const {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tones_),
                                                  static_cast<Eigen::Index>(antennas_));
        if (present)
            for (std::size_t n = 0; n < tones_; ++n)
                for (std::size_t m = 0; m < antennas_; ++m)
                    s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = x[vars[idx(n, m)]];
        return s;
    }

    Eigen::MatrixXd extract(std::span<const double> x, const std::vector<VarId>& vars, bool present) const {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tones_),
                                                  static_cast<Eigen::Index>(antennas_));
        if (!present)
            return s;
        for (std::size_t n = 0; n < tones_; ++n)
            for (std::size_t m = 0; m < antennas_; ++m) {
                const double v = x[vars[idx(n, m)]];
                // Amplitudes pinned near the floor stand for zero.
                s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = v < 10.0 * amp_floor_ ? 0.0 : v;
            }
        return s;
    }

    Eigen::MatrixXd gains_;
    double power_;
    double noise_;
    double rate_target_;
    ProgramShape shape_;
    std::size_t tones_ = 0;
    std::size_t antennas_ = 0;
    double amp_floor_ = 0.0;
    bool use_aux_ = false;

    std::vector<VarId> sp_, si_, aux_var_;
    VarId rho_ = 0, rho_bar_ = 0, t0_ = 0;
    std::vector<double> floors_;

    std::vector<Posynomial> xp_, xi_;
    Posynomial zdc_;
    Posynomial budget_;
    std::vector<Posynomial> posynomials_;
    std::vector<Posynomial> rate_terms_;
    std::vector<Posynomial> aux_;
};

// Uniform power per tone with a matched beam across the grid's columns.
Eigen::MatrixXd uniform_matched(const Eigen::MatrixXd& gains, double power) {
    const double per_tone = std::sqrt(2.0 * power / static_cast<double>(gains.rows()));
    Eigen::MatrixXd s(gains.rows(), gains.cols());
    for (Eigen::Index n = 0; n < gains.rows(); ++n) {
        const double norm = gains.row(n).norm();
        for (Eigen::Index m = 0; m < gains.cols(); ++m)
            s(n, m) = norm > 0.0 ? per_tone * gains(n, m) / norm
                                 : per_tone / std::sqrt(static_cast<double>(gains.cols()));
    }
    return s;
}

Eigen::MatrixXd waterfill_matched(const Eigen::MatrixXd& gains, double power, double noise) {
    std::vector<double> g(static_cast<std::size_t>(gains.rows()));
    for (Eigen::Index n = 0; n < gains.rows(); ++n)
        g[static_cast<std::size_t>(n)] = gains.row(n).squaredNorm();
    const std::vector<double> levels = waterfill_levels(g, noise, 2.0 * power);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(gains.rows(), gains.cols());
    for (Eigen::Index n = 0; n < gains.rows(); ++n) {
        const double level = levels[static_cast<std::size_t>(n)];
        if (level > 0.0)
            s.row(n) = std::sqrt(level) * gains.row(n) / std::sqrt(g[static_cast<std::size_t>(n)]);
    }
    return s;
}

struct StartPoint {
    Eigen::MatrixXd sp;
    Eigen::MatrixXd si;
    double rho = 0.5;
    double rho_bar = 0.5 - 1e-7;
};

// 50/50 UPMF start; when it misses the rate target, shift power toward a
// water-filling OFDM part and lower rho until the target is met.
std::optional<StartPoint> initial_point(const WiptProgram& program, const Eigen::MatrixXd& gains, double power,
                                        double noise, double rate_target, bool multisine) {
    const Eigen::MatrixXd upmf = uniform_matched(gains, power);
    StartPoint s;
    if (multisine) {
        s.sp = std::sqrt(0.5 * kInitialPowerScale) * upmf;
        s.si = std::sqrt(0.5 * kInitialPowerScale) * upmf;
    } else {
        s.sp = Eigen::MatrixXd::Zero(gains.rows(), gains.cols());
        s.si = std::sqrt(kInitialPowerScale) * upmf;
    }
    const double margin = 1e-9 * std::max(1.0, rate_target);
    if (rate_target <= 0.0 || program.rate(s.sp, s.si, s.rho_bar) >= rate_target + margin)
        return s;

    const Eigen::MatrixXd wf = waterfill_matched(gains, power, noise);
    for (double delta = multisine ? 0.5 : 0.0; ; delta *= 0.5) {
        if (delta < 1e-12)
            delta = 0.0;
        StartPoint c;
        c.sp = multisine ? Eigen::MatrixXd(std::sqrt(delta * kRepairPowerScale) * upmf)
                         : Eigen::MatrixXd::Zero(gains.rows(), gains.cols());
        c.si = std::sqrt((1.0 - delta) * kRepairPowerScale) * wf;
        // The GP floors every amplitude; evaluate the rate with the floored values.
        const double floor = 2.0 * program.amp_floor();
        if (multisine)
            c.sp = c.sp.cwiseMax(floor);
        c.si = c.si.cwiseMax(floor);
        if (program.rate(c.sp, c.si, 1.0) >= rate_target + margin) {
            double lo = 0.0;  // rate target met at rho = lo
            double hi = 1.0;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (program.rate(c.sp, c.si, 1.0 - mid) >= rate_target + margin)
                    lo = mid;
                else
                    hi = mid;
            }
            c.rho = 0.99 * lo;
            c.rho_bar = 1.0 - c.rho - 0.005 * lo;
            if (c.rho > 2.0 * kSplitFloor && program.rate(c.sp, c.si, c.rho_bar) >= rate_target)
                return c;
        }
        if (delta == 0.0)
            return std::nullopt;
    }
}

void check_inputs(const ChannelFreqResponse& channel, const RectennaModel& model, double power, double noise) {
    model.validate();
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("transmit power must be positive");
    if (!(noise > 0.0) || !std::isfinite(noise))
        throw std::invalid_argument("noise variance must be positive");
    if (channel.tones() == 0 || channel.antennas() == 0)
        throw std::invalid_argument("channel is empty");
}

double solution_rate(const WaveformDesign& d, const ChannelFreqResponse& channel, double noise, WiptMode mode) {
    if (mode == WiptMode::nc)
        return rate_nc(d.multisine_amp, d.ofdm_amp, d.multisine_phase, d.ofdm_phase, d.rho, channel, noise);
    return rate_pc(d.ofdm_amp, d.ofdm_phase, d.rho, channel, noise);
}

// Spreads per-tone amplitudes s_n over the antennas along h_n^H / ||h_n||.
Eigen::MatrixXd spread_over_antennas(const Eigen::MatrixXd& per_tone, const ChannelFreqResponse& channel) {
    const Eigen::MatrixXd amps = channel.amplitudes();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(amps.rows(), amps.cols());
    for (Eigen::Index n = 0; n < amps.rows(); ++n) {
        const double norm = amps.row(n).norm();
        if (norm > 0.0)
            s.row(n) = per_tone(n, 0) * amps.row(n) / norm;
    }
    return s;
}

WiptSolution run_wipt(WiptMode mode, const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                      double noise, double rate_target, const WiptOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    check_inputs(channel, model, power, noise);
    if (!(rate_target >= 0.0) || !std::isfinite(rate_target))
        throw std::invalid_argument("rate target must be finite and non-negative");
    const bool decoupled = mode == WiptMode::pc_decoupled;
    const bool multisine = !options.force_zero_multisine;
    const MatchedPhases phases = matched_phases(channel);

    WiptSolution out;
    out.mode = mode;
    auto finish = [&](WiptSolution& s) {
        s.solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return s;
    };

    const double r_wf = max_rate(channel, power, noise);
    if (rate_target > r_wf * (1.0 + 1e-9)) {
        out.trace.status = gp::SolveStatus::infeasible;
        out.message = "rate target exceeds the water-filling rate " + std::to_string(r_wf);
        out.design = WaveformDesign::zeros(channel.tones(), channel.antennas());
        return finish(out);
    }
    if (rate_target >= r_wf * (1.0 - 1e-7)) {
        // Only the water-filling waveform with rho = 0 meets this target.
        const AmplitudePhase wf = waterfilling(channel, power, noise);
        out.design = WaveformDesign::zeros(channel.tones(), channel.antennas());
        out.design.ofdm_amp = wf.amp;
        out.design.ofdm_phase = wf.phase;
        out.design.multisine_phase = phases.multisine;
        out.design.rho = 0.0;
        out.rate = solution_rate(out.design, channel, noise, mode);
        out.zdc = 0.0;
        out.feasible = true;
        out.trace.status = gp::SolveStatus::converged;
        out.trace.iterates.push_back({{}, 0.0, 0.0, 0.0, 1.0});
        out.message = "water-filling endpoint";
        return finish(out);
    }

    Eigen::MatrixXd gains;
    if (decoupled) {
        gains.resize(static_cast<Eigen::Index>(channel.tones()), 1);
        for (std::size_t n = 0; n < channel.tones(); ++n)
            gains(static_cast<Eigen::Index>(n), 0) = channel.tone_norm(n);
    } else {
        gains = channel.amplitudes();
    }

    ProgramShape shape;
    shape.multisine = multisine;
    shape.rate = rate_target > 0.0 ? (mode == WiptMode::nc ? RateKind::nc : RateKind::pc) : RateKind::none;
    const WiptProgram program(gains, model, power, noise, rate_target, shape, options.floor_fraction);

    const auto start = initial_point(program, gains, power, noise, rate_target, multisine);
    if (!start) {
        out.trace.status = gp::SolveStatus::infeasible;
        out.message = "no feasible starting point found";
        out.design = WaveformDesign::zeros(channel.tones(), channel.antennas());
        return finish(out);
    }
    const std::vector<double> x0 = program.point(start->sp, start->si, start->rho, start->rho_bar);
    out.trace = gp::sequential_condensation(program.sequential(options.extrapolate), x0, options.tolerance, options.max_iterations,
                                            options.gp);
    out.message = out.trace.message;

    const std::vector<double>& x = out.trace.iterates.back().point;
    Eigen::MatrixXd sp = program.multisine(x);
    Eigen::MatrixXd si = program.ofdm(x);
    if (decoupled) {
        sp = spread_over_antennas(sp, channel);
        si = spread_over_antennas(si, channel);
    }
    out.design.multisine_amp = sp;
    out.design.multisine_phase = phases.multisine;
    out.design.ofdm_amp = si;
    out.design.ofdm_phase = phases.ofdm;
    out.design.rho = std::min(1.0, program.rho(x));
    out.rho_bar = program.rho_bar(x);
    out.rate = solution_rate(out.design, channel, noise, mode);
    out.zdc = zdc_superposed(out.design, channel, model);
    out.feasible = out.rate >= rate_target - 1e-6 && out.design.total_power() <= power * (1.0 + 1e-6);
    return finish(out);
}

}  // namespace

WptSolution optimize_multisine_wpt(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                                   const SequentialOptions& options) {
    check_inputs(channel, model, power, 1.0);
    const Eigen::MatrixXd gains = channel.amplitudes();
    ProgramShape shape;
    shape.ofdm = false;
    shape.split = false;
    const WiptProgram program(gains, model, power, 1.0, 0.0, shape, options.floor_fraction);
    const Eigen::MatrixXd start = std::sqrt(kInitialPowerScale) * uniform_matched(gains, power);
    const std::vector<double> x0 = program.point(start, start, 1.0, 0.0);

    WptSolution out;
    out.trace = gp::sequential_condensation(program.sequential(options.extrapolate), x0, options.tolerance, options.max_iterations,
                                            options.gp);
    const std::vector<double>& x = out.trace.iterates.back().point;
    out.design = WaveformDesign::zeros(channel.tones(), channel.antennas());
    out.design.multisine_amp = program.multisine(x);
    out.design.multisine_phase = matched_phases(channel).multisine;
    out.design.rho = 1.0;
    out.zdc = zdc_multisine(out.design, channel, model);
    return out;
}

WiptSolution algorithm1_pc(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                           double noise, double rate_target, const WiptOptions& options) {
    return run_wipt(WiptMode::pc_joint, channel, model, power, noise, rate_target, options);
}

WiptSolution algorithm2_pc_decoupled(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                                     double noise, double rate_target, const WiptOptions& options) {
    return run_wipt(WiptMode::pc_decoupled, channel, model, power, noise, rate_target, options);
}

WiptSolution algorithm3_nc(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                           double noise, double rate_target, const WiptOptions& options) {
    return run_wipt(WiptMode::nc, channel, model, power, noise, rate_target, options);
}

WiptSolution solve_wipt(WiptMode mode, const ChannelFreqResponse& channel, const RectennaModel& model,
                        double power, double noise, double rate_target, const WiptOptions& options) {
    return run_wipt(mode, channel, model, power, noise, rate_target, options);
}

}  // namespace wipt
