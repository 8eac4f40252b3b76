#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "wipt/strategies.hpp"

using namespace wipt;

namespace {

const RectennaModel kModel{};
constexpr double kPower = 1e-5;
constexpr double kNoise = 1e-7;  // 20 dB SNR at kPower

ChannelFreqResponse pdp_channel(std::size_t tones, std::size_t antennas, std::uint64_t seed) {
    const auto grid = ToneGrid::from_bandwidth(tones, 5.18e9, 1e6);
    const auto geom = antennas == 1 ? ArrayGeometry::single() : ArrayGeometry::half_wavelength(antennas, 5.18e9);
    return frequency_response(sample_taps(PowerDelayProfile::exponential(), seed), grid, geom);
}

WaveformDesign multisine_design(const ChannelFreqResponse& h, const AmplitudePhase& w) {
    auto d = WaveformDesign::zeros(h.tones(), h.antennas());
    d.multisine_amp = w.amp;
    d.multisine_phase = w.phase;
    return d;
}

}  // namespace

TEST_SUITE("strategies") {

TEST_CASE("matched phases") {
    Eigen::MatrixXcd g(2, 1);
    g << 0.7, 2.0;
    const auto ph = matched_phases(ChannelFreqResponse(g));
    CHECK(ph.multisine.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ph.ofdm.cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXcd r(1, 1);
    r << std::polar(1.0, kPi / 3.0);
    CHECK(matched_phases(ChannelFreqResponse(r)).multisine(0, 0) == doctest::Approx(-kPi / 3.0));
}

TEST_CASE("matched phases dominate random phases") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> amp(0.2, 1.0);
    const auto h = iid_rayleigh_channel(4, 2, 77);
    auto d = WaveformDesign::zeros(4, 2);
    for (Eigen::Index i = 0; i < d.multisine_amp.size(); ++i) {
        d.multisine_amp(i) = 1e-2 * amp(rng);
        d.ofdm_amp(i) = 1e-2 * amp(rng);
    }
    d.rho = 0.7;
    const auto ph = matched_phases(h);
    d.multisine_phase = ph.multisine;
    d.ofdm_phase = ph.ofdm;
    const double matched = zdc_superposed(d, h, kModel);
    for (int trial = 0; trial < 100; ++trial) {
        auto r = d;
        for (Eigen::Index i = 0; i < r.multisine_phase.size(); ++i) {
            r.multisine_phase(i) = angle(rng);
            r.ofdm_phase(i) = angle(rng);
        }
        CHECK(zdc_superposed(r, h, kModel) <= matched * (1.0 + 1e-12));
    }
}

TEST_CASE("adaptive single sinewave") {
    Eigen::MatrixXcd g(2, 1);
    g << 1.0, std::complex<double>(0.0, 2.0);
    const ChannelFreqResponse h(g);
    CHECK(strongest_tone(h) == 1);
    const auto w = ass_waveform(h, 0.5);
    CHECK(w.amp(0, 0) == 0.0);
    CHECK(w.amp(1, 0) == doctest::Approx(1.0));
    CHECK(w.phase(1, 0) == doctest::Approx(-kPi / 2.0));

    const ChannelFreqResponse scaled(Eigen::MatrixXcd(g * 3.7));
    CHECK(strongest_tone(scaled) == 1);
    CHECK((ass_waveform(scaled, 0.5).amp - w.amp).norm() < 1e-15);

    CHECK_THROWS(ass_weights(ChannelFreqResponse(Eigen::MatrixXcd::Zero(2, 1)), 1.0));
}

TEST_CASE("single-sinewave beamformer attains the Cauchy-Schwarz bound") {
    const auto h = iid_rayleigh_channel(3, 2, 5);
    const double p = 2.0;
    const Eigen::MatrixXcd w = ass_weights(h, p);
    const std::size_t nb = strongest_tone(h);
    const auto row = static_cast<Eigen::Index>(nb);
    const double gain = std::abs((h.matrix().row(row) * w.row(row).transpose())(0, 0));
    CHECK(gain == doctest::Approx(h.tone_norm(nb) * std::sqrt(2.0 * p)).epsilon(1e-12));
    CHECK(w.row(row).norm() == doctest::Approx(std::sqrt(2.0 * p)).epsilon(1e-12));

    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 200; ++i) {
        Eigen::VectorXcd v(2);
        v << std::complex<double>(nd(rng), nd(rng)), std::complex<double>(nd(rng), nd(rng));
        v *= std::sqrt(2.0 * p) / v.norm();
        CHECK(std::abs((h.matrix().row(row) * v)(0, 0)) <= gain * (1.0 + 1e-12));
    }
}

TEST_CASE("uniform power strategies") {
    const auto up = up_weights(4, 1.0);
    CHECK(up.amp.rows() == 4);
    for (Eigen::Index n = 0; n < 4; ++n)
        CHECK(up.amp(n, 0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(up.phase.cwiseAbs().maxCoeff() == 0.0);

    const auto upmf_flat = upmf_weights(flat_channel(4, 1), 1.0);
    CHECK((upmf_flat.amp - up.amp).norm() < 1e-15);
    CHECK(upmf_flat.phase.cwiseAbs().maxCoeff() == 0.0);

    int wins = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto h = iid_rayleigh_channel(8, 1, 1000 + s);
        const double z_up = zdc_multisine(multisine_design(h, up_weights(8, kPower)), h, kModel);
        const double z_mf = zdc_multisine(multisine_design(h, upmf_weights(h, kPower)), h, kModel);
        wins += z_mf >= z_up ? 1 : 0;
    }
    CHECK(wins == 100);
}

TEST_CASE("water-filling levels") {
    const std::vector<double> equal{2.0, 2.0, 2.0};
    for (double p : waterfill_levels(equal, 1.0, 3.0))
        CHECK(p == doctest::Approx(1.0));

    const std::vector<double> dead{1.0, 0.0};
    const auto pd = waterfill_levels(dead, 1.0, 1.0);
    CHECK(pd[1] == 0.0);
    CHECK(pd[0] == doctest::Approx(1.0));

    // Gains |h|^2 = (1, 4), noise 1, budget 3: both active at mu = 2.125.
    const std::vector<double> g{1.0, 4.0};
    const auto p = waterfill_levels(g, 1.0, 3.0);
    CHECK(p[0] == doctest::Approx(2.125 - 1.0).epsilon(1e-9));
    CHECK(p[1] == doctest::Approx(2.125 - 0.25).epsilon(1e-9));
    CHECK(p[0] + p[1] == doctest::Approx(3.0).epsilon(1e-12));

    double best = 0.0;
    double best_p0 = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double p0 = 3.0 * i / 10000.0;
        const double r = oracle::sum_rate(g, {p0, 3.0 - p0}, 1.0);
        if (r > best) {
            best = r;
            best_p0 = p0;
        }
    }
    CHECK(std::abs(p[0] - best_p0) <= 3.0 / 10000.0);
    CHECK(oracle::sum_rate(g, p, 1.0) >= best - 1e-12);
}

TEST_CASE("water-filling precoder spends the budget") {
    const auto h = pdp_channel(8, 2, 3);
    const auto w = waterfilling(h, kPower, kNoise);
    CHECK(0.5 * w.amp.squaredNorm() == doctest::Approx(kPower).epsilon(1e-9));
    CHECK(max_rate(h, kPower, kNoise) ==
          doctest::Approx(rate_pc(w.amp, w.phase, 0.0, h, kNoise)).epsilon(1e-12));
}

TEST_CASE("WPT-only multisine optimization") {
    SUBCASE("linear model puts all power on the strongest tone") {
        RectennaModel linear = kModel;
        linear.order = 2;
        const auto h = pdp_channel(8, 1, 12);
        const auto sol = optimize_multisine_wpt(h, linear, kPower);
        const auto ass = ass_waveform(h, kPower);
        const std::size_t nb = strongest_tone(h);
        CHECK(sol.design.multisine_amp(static_cast<Eigen::Index>(nb), 0) ==
              doctest::Approx(ass.amp(static_cast<Eigen::Index>(nb), 0)).epsilon(1e-3));
        CHECK(sol.zdc == doctest::Approx(zdc_multisine(multisine_design(h, ass), h, linear)).epsilon(1e-4));
    }
    SUBCASE("single tone") {
        const auto sol = optimize_multisine_wpt(flat_channel(1, 1), kModel, kPower);
        CHECK(sol.design.multisine_amp(0, 0) == doctest::Approx(std::sqrt(2.0 * kPower)).epsilon(1e-6));
    }
    SUBCASE("two flat tones beat a single sinewave and match a fine search") {
        const auto h = flat_channel(2, 1);
        const auto sol = optimize_multisine_wpt(h, kModel, kPower);
        const double z_ass = zdc_multisine(multisine_design(h, ass_waveform(h, kPower)), h, kModel);
        CHECK(sol.zdc > z_ass);
        CHECK(sol.zdc == doctest::Approx(oracle::flat2_multisine_search(kModel, kPower)).epsilon(1e-6));
        CHECK(sol.trace.non_decreasing());
        CHECK(sol.design.multisine_power() <= kPower * (1.0 + 1e-9));
    }
}

TEST_CASE("PC design at the rate endpoints") {
    SUBCASE("zero rate recovers the WPT-only optimum") {
        const auto h = flat_channel(4, 1);
        const auto wpt = optimize_multisine_wpt(h, kModel, kPower);
        const auto sol = algorithm1_pc(h, kModel, kPower, kNoise, 0.0);
        CHECK(sol.feasible);
        CHECK(sol.design.rho >= 0.999);
        CHECK(sol.zdc >= wpt.zdc * (1.0 - 1e-3));
        CHECK(sol.zdc <= wpt.zdc * 1.01);
    }
    SUBCASE("maximum rate degenerates to water-filling") {
        const auto h = pdp_channel(8, 1, 4);
        const double rwf = max_rate(h, kPower, kNoise);
        const auto sol = algorithm1_pc(h, kModel, kPower, kNoise, rwf);
        CHECK(sol.feasible);
        CHECK(sol.rate == doctest::Approx(rwf).epsilon(1e-4));
        CHECK(sol.design.rho <= 1e-3);
        CHECK(sol.design.multisine_power() <= 1e-3 * kPower);
        const auto beyond = algorithm1_pc(h, kModel, kPower, kNoise, rwf * 1.01);
        CHECK_FALSE(beyond.feasible);
        CHECK(beyond.status() == gp::SolveStatus::infeasible);
    }
}

TEST_CASE("PC design matches an exhaustive search on two flat tones") {
    const auto h = flat_channel(2, 1);
    const double rwf = max_rate(h, kPower, kNoise);
    for (double frac : {0.3, 0.5, 0.7}) {
        const double target = frac * rwf;
        const auto sol = algorithm1_pc(h, kModel, kPower, kNoise, target);
        const auto grid = oracle::flat2_grid_search(kModel, kPower, kNoise, target, 0.02);
        CAPTURE(frac);
        CHECK(sol.feasible);
        CHECK(sol.rate >= target * (1.0 - 1e-6));
        CHECK(sol.trace.non_decreasing());
        CHECK(std::abs(sol.zdc - grid.zdc) <= 0.01 * grid.zdc);
    }
}

TEST_CASE("decoupled design") {
    SUBCASE("single antenna reproduces the joint design") {
        const auto h = pdp_channel(4, 1, 8);
        const double target = 0.5 * max_rate(h, kPower, kNoise);
        const auto a = algorithm1_pc(h, kModel, kPower, kNoise, target);
        const auto b = algorithm2_pc_decoupled(h, kModel, kPower, kNoise, target);
        CHECK(b.zdc == doctest::Approx(a.zdc).epsilon(1e-4));
        CHECK(b.rate == doctest::Approx(a.rate).epsilon(1e-4));
    }
    SUBCASE("two antennas agree within 1%") {
        const auto h = pdp_channel(2, 2, 8);
        const double rwf = max_rate(h, kPower, kNoise);
        for (double frac : {0.0, 0.4, 0.8}) {
            const auto a = algorithm1_pc(h, kModel, kPower, kNoise, frac * rwf);
            const auto b = algorithm2_pc_decoupled(h, kModel, kPower, kNoise, frac * rwf);
            CAPTURE(frac);
            CHECK(std::abs(b.zdc - a.zdc) <= 0.01 * a.zdc);
            // At zero target the rate is unconstrained and essentially zero.
            CHECK(std::abs(b.rate - a.rate) <= 0.01 * std::max(a.rate, 1e-2 * rwf));
        }
    }
}

TEST_CASE("NC design") {
    const auto h = pdp_channel(4, 1, 21);
    const double rwf = max_rate(h, kPower, kNoise);

    SUBCASE("without multisine it is the OFDM-only PC design") {
        WiptOptions zero;
        zero.force_zero_multisine = true;
        const double target = 0.5 * rwf;
        const auto nc = algorithm3_nc(h, kModel, kPower, kNoise, target, zero);
        const auto pc = algorithm1_pc(h, kModel, kPower, kNoise, target, zero);
        CHECK(nc.design.multisine_power() == 0.0);
        CHECK(nc.zdc == doctest::Approx(pc.zdc).epsilon(1e-6));
        CHECK(nc.rate == doctest::Approx(pc.rate).epsilon(1e-6));
    }
    SUBCASE("interference never helps") {
        for (double frac : {0.2, 0.5, 0.8}) {
            const auto nc = algorithm3_nc(h, kModel, kPower, kNoise, frac * rwf);
            const auto pc = algorithm1_pc(h, kModel, kPower, kNoise, frac * rwf);
            CAPTURE(frac);
            CHECK(nc.feasible);
            CHECK(nc.rate >= frac * rwf * (1.0 - 1e-6));
            CHECK(nc.zdc <= pc.zdc * (1.0 + 1e-4));
            CHECK(nc.trace.non_decreasing());
        }
    }
    SUBCASE("high SNR leaves little power on the multisine") {
        const double noise = kPower / 1e4;
        const double target = 0.8 * max_rate(h, kPower, noise);
        const auto nc = algorithm3_nc(h, kModel, kPower, noise, target);
        CHECK(nc.feasible);
        CHECK(nc.design.multisine_power() < 0.1 * kPower);
    }
}

TEST_CASE("input checks") {
    const auto h = flat_channel(2, 1);
    CHECK_THROWS(algorithm1_pc(h, kModel, -1.0, kNoise, 0.0));
    CHECK_THROWS(algorithm1_pc(h, kModel, kPower, 0.0, 0.0));
    CHECK_THROWS(algorithm1_pc(h, kModel, kPower, kNoise, -1.0));
    CHECK(std::string(to_string(WiptMode::nc)) == "NC");
}

}  // TEST_SUITE
