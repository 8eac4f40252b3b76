// One PASS/FAIL line per acceptance criterion. The exit status is 0 whenever
// every criterion ran; a FAIL line is a finding, not a crash.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wipt/rateenergy.hpp"
#include "wipt/scaling.hpp"
#include "wipt/strategies.hpp"
#include "wipt/validation.hpp"

using namespace wipt;

namespace {

const RectennaModel kModel{};
constexpr double kPower = 1e-5;
constexpr double kNoise = 1e-7;  // 20 dB SNR at kPower
constexpr std::uint64_t kRegionSeed = 7;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Solutions from criteria 5 to 7, kept for the solver-health check.
std::vector<WiptSolution> g_keep;

void keep(const WiptSolution& s) {
    g_keep.push_back(s);
}

double round_sig(double v, int digits) {
    const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
    return std::round(v * scale) / scale;
}

ChannelFreqResponse pdp_channel(std::size_t tones, std::size_t antennas, std::uint64_t seed) {
    const auto grid = ToneGrid::from_bandwidth(tones, 5.18e9, 1e6);
    const auto geom = antennas == 1 ? ArrayGeometry::single() : ArrayGeometry::half_wavelength(antennas, 5.18e9);
    return frequency_response(sample_taps(PowerDelayProfile::exponential(), seed), grid, geom);
}

ScalingSpec scaling_spec(ScalingWaveform w, ScalingStrategy s, ChannelKind c, std::vector<std::size_t> tones,
                         std::size_t trials) {
    ScalingSpec out;
    out.waveform = w;
    out.strategy = s;
    out.channel = c;
    out.tones = std::move(tones);
    out.trials = trials;
    return out;
}

Outcome taylor() {
    const double k2 = taylor_coefficient(kModel, 2);
    const double k4 = taylor_coefficient(kModel, 4);
    const bool ok = round_sig(k2, 2) == round_sig(0.0034, 2) && round_sig(k4, 2) == round_sig(0.3829, 2);
    return {ok, fmt("k2=%.6g k4=%.6g", k2, k4)};
}

Outcome oracle_equivalence() {
    ValidationOptions opt;
    opt.instances = 50;
    opt.symbol_draws = 100000;
    const auto report = run_validation(kModel, opt);
    double worst_det = 0.0;
    double worst_mc = 0.0;
    for (const auto& row : report.rows)
        (row.quantity == "multisine" ? worst_det : worst_mc) =
            std::max(row.quantity == "multisine" ? worst_det : worst_mc, row.rel_error);
    return {report.passed() && report.rows.size() == 150,
            fmt("%.0f/%.0f checks, worst multisine rel err %.2e, worst Monte-Carlo rel err %.4f",
                static_cast<double>(report.rows.size() - report.failures()), static_cast<double>(report.rows.size()),
                worst_det, worst_mc)};
}

Outcome papr() {
    const double p2 = papr_multisine_db(2);
    const double p4 = papr_multisine_db(4);
    return {std::abs(p2 - 6.02) <= 0.01 && std::abs(p4 - 9.03) <= 0.01, fmt("N=2 %.4f dB, N=4 %.4f dB", p2, p4)};
}

Outcome trend_multisine_up_flat() {
    const auto r = scaling_experiment(
        scaling_spec(ScalingWaveform::multisine, ScalingStrategy::up, ChannelKind::flat, {4, 8, 16, 32}, 1), kPower,
        kModel, 1);
    const double r2 = r.fit.r_squared[static_cast<std::size_t>(TrendClass::linear)];
    return {r2 > 0.99, fmt("linear R^2 = %.6f", r2)};
}

Outcome trend_ofdm_up_flat() {
    const auto r = scaling_experiment(
        scaling_spec(ScalingWaveform::ofdm, ScalingStrategy::up, ChannelKind::flat, {4, 8, 16, 32}, 1), kPower, kModel,
        1);
    double lo = r.rows.front().quart_term;
    double hi = lo;
    for (const auto& row : r.rows) {
        lo = std::min(lo, row.quart_term);
        hi = std::max(hi, row.quart_term);
    }
    const double spread = (hi - lo) / lo;
    return {spread <= 0.10, fmt("quartic term spread %.3e relative", spread)};
}

Outcome trend_ofdm_ass_selective() {
    const auto r = scaling_experiment(
        scaling_spec(ScalingWaveform::ofdm, ScalingStrategy::ass, ChannelKind::selective, {8, 16, 32, 64}, 500),
        kPower, kModel, 1);
    const auto& f = r.fit;
    return {f.best == TrendClass::log_squared,
            std::string("best fit ") + to_string(f.best) + fmt(" (AIC flat %.2f, linear %.2f, log2 %.2f)", f.aic[0],
                                                               f.aic[1], f.aic[2])};
}

Outcome upmf_vs_ass() {
    const std::vector<std::size_t> tones{8, 16, 32};
    const auto upmf = scaling_experiment(
        scaling_spec(ScalingWaveform::multisine, ScalingStrategy::upmf, ChannelKind::selective, tones, 200), kPower,
        kModel, 1);
    const auto ass = scaling_experiment(
        scaling_spec(ScalingWaveform::multisine, ScalingStrategy::ass, ChannelKind::selective, tones, 200), kPower,
        kModel, 1);
    const auto& u = upmf.rows.back();
    const auto& a = ass.rows.back();
    return {u.mean_zdc > a.mean_zdc, fmt("N=32 mean z_DC UPMF %.4e (se %.1e) vs ASS %.4e (se %.1e)", u.mean_zdc,
                                         u.std_error, a.mean_zdc, a.std_error)};
}

Outcome brute_force() {
    const auto h = flat_channel(2, 1);
    const double target = 0.5 * max_rate(h, kPower, kNoise);
    const auto sol = algorithm1_pc(h, kModel, kPower, kNoise, target);
    keep(sol);
    const auto grid = oracle::flat2_grid_search(kModel, kPower, kNoise, target, 0.01);
    const double gap = (grid.zdc - sol.zdc) / grid.zdc;
    return {sol.feasible && sol.rate >= target * (1.0 - 1e-6) && gap <= 0.01,
            fmt("Rbar=%.4f: algorithm %.6e, grid %.6e, shortfall %.2e", target, sol.zdc, grid.zdc, gap)};
}

Outcome algorithm_equivalence() {
    double worst_z = 0.0;
    double worst_r = 0.0;
    for (std::size_t n : {2u, 4u}) {
        const auto h = pdp_channel(n, 2, 11);
        const double rwf = max_rate(h, kPower, kNoise);
        for (double frac : {0.25, 0.5, 0.75}) {
            const auto a = algorithm1_pc(h, kModel, kPower, kNoise, frac * rwf);
            const auto b = algorithm2_pc_decoupled(h, kModel, kPower, kNoise, frac * rwf);
            keep(a);
            keep(b);
            worst_z = std::max(worst_z, std::abs(b.zdc - a.zdc) / a.zdc);
            worst_r = std::max(worst_r, std::abs(b.rate - a.rate) / a.rate);
        }
    }
    const auto h = pdp_channel(4, 1, 11);
    const double target = 0.5 * max_rate(h, kPower, kNoise);
    WiptOptions zero;
    zero.force_zero_multisine = true;
    const auto nc = algorithm3_nc(h, kModel, kPower, kNoise, target, zero);
    const auto no = algorithm1_pc(h, kModel, kPower, kNoise, target, zero);
    keep(nc);
    keep(no);
    const double d = std::max(std::abs(nc.zdc - no.zdc) / no.zdc, std::abs(nc.rate - no.rate) / no.rate);
    return {worst_z <= 0.01 && worst_r <= 0.01 && d <= 1e-5,
            fmt("decoupled vs joint: z %.2e, rate %.2e; NC without multisine vs NoWpt %.2e", worst_z, worst_r, d)};
}

struct RegionRun {
    ChannelFreqResponse h = flat_channel(1, 1);
    RegionBoundary pc;
    RegionBoundary nc;
    RegionBoundary no;
};

const RegionRun& region_run() {
    static const RegionRun run = [] {
        RegionRun r;
        r.h = pdp_channel(16, 1, kRegionSeed);
        SweepOptions opt;
        opt.grid_size = 20;
        r.pc = sweep_region(r.h, kModel, kPower, kNoise, RegionMode::pc, opt);
        r.nc = sweep_region(r.h, kModel, kPower, kNoise, RegionMode::nc, opt);
        r.no = sweep_region(r.h, kModel, kPower, kNoise, RegionMode::no_wpt, opt);
        for (const auto* b : {&r.pc, &r.nc, &r.no})
            for (const auto& s : b->solutions)
                keep(s);
        return r;
    }();
    return run;
}

Outcome region_endpoints() {
    const auto& r = region_run();
    const auto& top = r.pc.solutions.back();
    const double rate_err = std::abs(top.rate - r.pc.max_rate) / r.pc.max_rate;
    const auto wpt = optimize_multisine_wpt(r.h, kModel, kPower);
    const auto& bottom = r.pc.solutions.front();
    const double z_err = std::abs(bottom.zdc - wpt.zdc) / wpt.zdc;
    return {rate_err <= 1e-4 && top.design.rho <= 1e-3 && z_err <= 0.01,
            fmt("rate err %.2e with rho %.2e; Rbar=0 vs WPT-only z %.2e", rate_err, top.design.rho, z_err)};
}

Outcome region_nesting() {
    const auto& r = region_run();
    std::size_t bad = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < r.pc.solutions.size(); ++i) {
        const double pc = r.pc.solutions[i].zdc;
        const double nc = r.nc.solutions[i].zdc;
        const double no = r.no.solutions[i].zdc;
        worst = std::max({worst, (nc - pc) / nc, (no - nc) / no});
        if (pc < nc * (1.0 - 0.01) || nc < no * (1.0 - 0.01))
            ++bad;
    }
    return {bad == 0, fmt("%.0f of %.0f grid points violate; worst relative deficit %.2e", static_cast<double>(bad),
                          static_cast<double>(r.pc.solutions.size()), worst)};
}

Outcome region_hull() {
    const auto& r = region_run();
    double gain = 0.0;
    double at = 0.0;
    for (const auto& p : r.pc.points) {
        if (!p.feasible || p.rbar <= 0.0 || p.rbar >= r.pc.max_rate)
            continue;
        const double g = (hull_value(r.pc.hull, p.rate) - p.zdc) / p.zdc;
        if (g > gain) {
            gain = g;
            at = p.rbar;
        }
    }
    return {gain > 1e-6, fmt("largest hull gain %.3e relative at Rbar=%.4f", gain, at)};
}

Outcome solver_health() {
    std::size_t count = 0;
    std::size_t bad = 0;
    int longest = 0;
    for (const auto& s : g_keep) {
        ++count;
        longest = std::max(longest, s.trace.iterations());
        if (!s.trace.non_decreasing(1e-8) || s.trace.iterations() > 50)
            ++bad;
    }
    return {count > 0 && bad == 0, fmt("%.0f traces, %.0f unhealthy, longest %.0f iterations",
                                       static_cast<double>(count), static_cast<double>(bad),
                                       static_cast<double>(longest))};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 taylor coefficients", taylor},
        {"2 oracle equivalence", oracle_equivalence},
        {"3 multisine PAPR", papr},
        {"4a multisine UP flat is linear", trend_multisine_up_flat},
        {"4b OFDM UP flat is constant", trend_ofdm_up_flat},
        {"4c OFDM ASS selective is log-squared", trend_ofdm_ass_selective},
        {"4d multisine UPMF beats ASS at N=32", upmf_vs_ass},
        {"5 brute-force optimality", brute_force},
        {"6 algorithm equivalence", algorithm_equivalence},
        {"7a region endpoints", region_endpoints},
        {"7b region nesting", region_nesting},
        {"7c time sharing beats power splitting", region_hull},
        {"8 solver health", solver_health},
    };
    int crashed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
            ++crashed;
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), sec);
        std::fflush(stdout);
    }
    return crashed == 0 ? 0 : 1;
}
