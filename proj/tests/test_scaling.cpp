#include <doctest.h>

#include <cmath>
#include <vector>

#include "wipt/scaling.hpp"

using namespace wipt;

namespace {

const RectennaModel kModel{};
constexpr double kPower = 1e-5;

double k4r2p2() {
    return taylor_coefficient(kModel, 4) * kModel.antenna_resistance * kModel.antenna_resistance * kPower * kPower;
}

ScalingSpec spec(ScalingWaveform w, ScalingStrategy s, ChannelKind c, std::vector<std::size_t> tones,
                 std::size_t trials) {
    ScalingSpec out;
    out.waveform = w;
    out.strategy = s;
    out.channel = c;
    out.tones = std::move(tones);
    out.trials = trials;
    return out;
}

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("trend classifier on synthetic data") {
    const std::vector<double> n{4, 8, 16, 32, 64};
    std::vector<double> lin;
    std::vector<double> flat;
    std::vector<double> log2;
    for (double x : n) {
        lin.push_back(3.0 + 2.0 * x);
        flat.push_back(5.0 + (flat.size() % 2 == 0 ? 0.01 : -0.01));
        log2.push_back(1.0 + 0.5 * std::pow(std::log(x), 2) + 0.01 * std::cos(x));
    }
    const auto a = classify_trend(n, lin);
    CHECK(a.best == TrendClass::linear);
    CHECK(a.slope[1] == doctest::Approx(2.0));
    CHECK(a.r_squared[1] == doctest::Approx(1.0));
    CHECK(classify_trend(n, flat).best == TrendClass::flat);
    const auto c = classify_trend(n, log2);
    CHECK(c.best == TrendClass::log_squared);
    CHECK(c.slope[2] == doctest::Approx(0.5).epsilon(0.01));
    CHECK_THROWS(classify_trend(std::vector<double>{1, 2}, std::vector<double>{1, 2}));
}

TEST_CASE("multisine UP on a flat channel grows linearly and is deterministic") {
    const auto r = scaling_experiment(
        spec(ScalingWaveform::multisine, ScalingStrategy::up, ChannelKind::flat, {4, 8, 16, 32}, 50), kPower, kModel, 1);
    REQUIRE(r.rows.size() == 4);
    for (const auto& row : r.rows) {
        const double n = static_cast<double>(row.tones);
        // 3/8 (2P/N)^2 k4 R^2 times the (2N^3 + N) / 3 quadruples.
        CHECK(row.quart_term == doctest::Approx(k4r2p2() * (2.0 * n * n + 1.0) / (2.0 * n)).epsilon(1e-12));
        CHECK(row.std_error == 0.0);
    }
    CHECK(r.fit.r_squared[static_cast<std::size_t>(TrendClass::linear)] > 0.99);
    CHECK(r.fit.best == TrendClass::linear);
}

TEST_CASE("OFDM UP on a flat channel is constant") {
    const auto r = scaling_experiment(
        spec(ScalingWaveform::ofdm, ScalingStrategy::up, ChannelKind::flat, {4, 8, 16, 32}, 10), kPower, kModel, 1);
    for (const auto& row : r.rows)
        CHECK(row.quart_term == doctest::Approx(3.0 * k4r2p2()).epsilon(1e-12));
    CHECK(r.fit.best == TrendClass::flat);
}

TEST_CASE("OFDM ASS on selective channels follows the order statistics of the strongest tone") {
    // max of N unit exponentials: mean H_N, variance sum 1/k^2.
    const std::size_t trials = 4000;
    const auto r = scaling_experiment(
        spec(ScalingWaveform::ofdm, ScalingStrategy::ass, ChannelKind::selective, {8, 16, 32, 64}, trials), kPower,
        kModel, 5);
    for (const auto& row : r.rows) {
        double h = 0.0;
        double v = 0.0;
        for (std::size_t k = 1; k <= row.tones; ++k) {
            h += 1.0 / static_cast<double>(k);
            v += 1.0 / static_cast<double>(k * k);
        }
        CAPTURE(row.tones);
        CHECK(row.quart_term == doctest::Approx(3.0 * k4r2p2() * (h * h + v)).epsilon(0.05));
        CHECK(row.std_error > 0.0);
    }
    CHECK(r.fit.best == TrendClass::log_squared);
}

TEST_CASE("selective runs are reproducible and thread-count independent") {
    auto s = spec(ScalingWaveform::multisine, ScalingStrategy::upmf, ChannelKind::selective, {2, 4, 8}, 64);
    const auto a = scaling_experiment(s, kPower, kModel, 9);
    s.threads = 4;
    const auto b = scaling_experiment(s, kPower, kModel, 9);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].mean_zdc == b.rows[i].mean_zdc);
        CHECK(a.rows[i].std_error == b.rows[i].std_error);
    }
    const auto c = scaling_experiment(s, kPower, kModel, 10);
    CHECK(c.rows[0].mean_zdc != a.rows[0].mean_zdc);
}

TEST_CASE("invalid specs") {
    auto s = spec(ScalingWaveform::ofdm, ScalingStrategy::up, ChannelKind::flat, {4, 8}, 10);
    CHECK_THROWS(scaling_experiment(s, kPower, kModel, 1));
    s.tones = {4, 8, 8};
    CHECK_THROWS(scaling_experiment(s, kPower, kModel, 1));
    s.tones = {4, 8, 16};
    s.trials = 0;
    CHECK_THROWS(scaling_experiment(s, kPower, kModel, 1));
    CHECK(scaling_strategy_from_string("UPMF") == ScalingStrategy::upmf);
    CHECK_THROWS(channel_kind_from_string("rician"));
}

}  // TEST_SUITE
