#include "wipt/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wipt/chanmodel.hpp"
#include "wipt/parallel.hpp"
#include "wipt/strategies.hpp"

namespace wipt {

const char* to_string(ScalingWaveform w) { return w == ScalingWaveform::multisine ? "multisine" : "ofdm"; }

const char* to_string(ScalingStrategy s) {
    switch (s) {
        case ScalingStrategy::up: return "UP";
        case ScalingStrategy::ass: return "ASS";
        case ScalingStrategy::upmf: return "UPMF";
    }
    return "UP";
}

const char* to_string(ChannelKind c) { return c == ChannelKind::flat ? "flat" : "selective"; }

const char* to_string(TrendClass t) {
    switch (t) {
        case TrendClass::flat: return "flat";
        case TrendClass::linear: return "linear";
        case TrendClass::log_squared: return "log2";
    }
    return "flat";
}

ScalingWaveform scaling_waveform_from_string(const std::string& name) {
    if (name == "multisine")
        return ScalingWaveform::multisine;
    if (name == "ofdm" || name == "OFDM")
        return ScalingWaveform::ofdm;
    throw std::invalid_argument("unknown waveform '" + name + "'");
}

ScalingStrategy scaling_strategy_from_string(const std::string& name) {
    if (name == "UP" || name == "up")
        return ScalingStrategy::up;
    if (name == "ASS" || name == "ass")
        return ScalingStrategy::ass;
    if (name == "UPMF" || name == "upmf")
        return ScalingStrategy::upmf;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

ChannelKind channel_kind_from_string(const std::string& name) {
    if (name == "flat")
        return ChannelKind::flat;
    if (name == "selective")
        return ChannelKind::selective;
    throw std::invalid_argument("unknown channel kind '" + name + "'");
}

void ScalingSpec::validate() const {
    if (tones.size() < 3)
        throw std::invalid_argument("scaling run needs at least three tone counts");
    if (tones.front() < 1)
        throw std::invalid_argument("tone counts must be >= 1");
    for (std::size_t i = 1; i < tones.size(); ++i)
        if (tones[i] <= tones[i - 1])
            throw std::invalid_argument("tone counts must be strictly ascending");
    if (trials < 1)
        throw std::invalid_argument("scaling run needs at least one trial");
}

TrendFit classify_trend(std::span<const double> tones, std::span<const double> values) {
    if (tones.size() != values.size() || tones.size() < 3)
        throw std::invalid_argument("trend fit needs at least three (N, value) pairs");
    const auto n = static_cast<double>(values.size());
    double mean_y = 0.0;
    double scale = 0.0;
    for (double y : values) {
        mean_y += y / n;
        scale = std::max(scale, std::abs(y));
    }
    double tss = 0.0;
    for (double y : values)
        tss += (y - mean_y) * (y - mean_y);
    // Exact fits would give log(0); treat residuals below rounding as rounding.
    const double rss_floor = n * std::pow(1e-12 * std::max(scale, std::numeric_limits<double>::min()), 2);

    TrendFit fit;
    auto record = [&](TrendClass cls, double a, double b, double rss, int params) {
        const auto i = static_cast<std::size_t>(cls);
        fit.intercept[i] = a;
        fit.slope[i] = b;
        fit.r_squared[i] = tss > 0.0 ? 1.0 - rss / tss : (rss == 0.0 ? 1.0 : 0.0);
        fit.aic[i] = n * std::log(std::max(rss, rss_floor) / n) + 2.0 * params;
    };

    double rss_flat = tss;
    record(TrendClass::flat, mean_y, 0.0, rss_flat, 1);

    auto regress = [&](TrendClass cls, auto&& feature) {
        double mx = 0.0;
        for (double t : tones)
            mx += feature(t) / n;
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            const double dx = feature(tones[k]) - mx;
            sxx += dx * dx;
            sxy += dx * (values[k] - mean_y);
        }
        const double b = sxx > 0.0 ? sxy / sxx : 0.0;
        const double a = mean_y - b * mx;
        double rss = 0.0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            const double r = values[k] - (a + b * feature(tones[k]));
            rss += r * r;
        }
        record(cls, a, b, rss, 2);
    };
    regress(TrendClass::linear, [](double t) { return t; });
    regress(TrendClass::log_squared, [](double t) { return std::pow(std::log(t), 2); });

    fit.best = TrendClass::flat;
    for (TrendClass c : {TrendClass::linear, TrendClass::log_squared})
        if (fit.aic[static_cast<std::size_t>(c)] < fit.aic[static_cast<std::size_t>(fit.best)])
            fit.best = c;
    return fit;
}

namespace {

ZdcTerms evaluate_trial(const ScalingSpec& spec, const ChannelFreqResponse& channel, double power,
                        const RectennaModel& model) {
    AmplitudePhase w;
    switch (spec.strategy) {
        case ScalingStrategy::up: w = up_weights(channel.tones(), power, channel.antennas()); break;
        case ScalingStrategy::ass: w = ass_waveform(channel, power); break;
        case ScalingStrategy::upmf: w = upmf_weights(channel, power); break;
    }
    WaveformDesign d = WaveformDesign::zeros(channel.tones(), channel.antennas());
    if (spec.waveform == ScalingWaveform::multisine) {
        d.multisine_amp = w.amp;
        d.multisine_phase = w.phase;
        return zdc_multisine_terms(d, channel, model);
    }
    d.ofdm_amp = w.amp;
    d.ofdm_phase = w.phase;
    return zdc_ofdm_terms(d, channel, model);
}

}  // namespace

ScalingResult scaling_experiment(const ScalingSpec& spec, double power, const RectennaModel& model,
                                 std::uint64_t seed) {
    spec.validate();
    model.validate();
    if (!(power > 0.0))
        throw std::invalid_argument("transmit power must be positive");

    ScalingResult out;
    out.spec = spec;
    for (std::size_t ni = 0; ni < spec.tones.size(); ++ni) {
        const std::size_t tones = spec.tones[ni];
        ScalingRow row;
        row.tones = tones;
        if (spec.channel == ChannelKind::flat) {
            const ZdcTerms z = evaluate_trial(spec, flat_channel(tones, 1), power, model);
            row.mean_zdc = z.total();
            row.quad_term = z.quadratic;
            row.quart_term = z.quartic;
        } else {
            std::vector<ZdcTerms> trials(spec.trials);
            const std::uint64_t base = derive_seed(seed, tones);
            parallel_for(spec.trials, spec.threads, [&](std::size_t t) {
                trials[t] = evaluate_trial(spec, iid_rayleigh_channel(tones, 1, derive_seed(base, t)), power, model);
            });
            const auto count = static_cast<double>(spec.trials);
            double mean = 0.0;
            for (const auto& z : trials) {
                mean += z.total() / count;
                row.quad_term += z.quadratic / count;
                row.quart_term += z.quartic / count;
            }
            double var = 0.0;
            for (const auto& z : trials)
                var += (z.total() - mean) * (z.total() - mean);
            row.mean_zdc = mean;
            row.std_error = spec.trials > 1 ? std::sqrt(var / (count - 1.0) / count) : 0.0;
        }
        out.rows.push_back(row);
    }

    std::vector<double> n;
    std::vector<double> q;
    for (const auto& r : out.rows) {
        n.push_back(static_cast<double>(r.tones));
        q.push_back(r.quart_term);
    }
    out.fit = classify_trend(n, q);
    return out;
}

}  // namespace wipt
