#include "wipt/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "wipt/io.hpp"
#include "wipt/parallel.hpp"
#include "wipt/strategies.hpp"

namespace wipt {

ValidationOptions quick_validation_options() {
    ValidationOptions o;
    o.instances = 6;
    o.symbol_draws = 20000;
    o.monte_carlo_tolerance = 0.04;
    return o;
}

std::size_t ValidationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; }));
}

namespace {

struct Instance {
    ChannelFreqResponse channel;
    WaveformDesign design;
};

Instance random_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> tones_dist(1, 4);
    std::uniform_int_distribution<int> antennas_dist(1, 2);
    std::uniform_int_distribution<int> rho_dist(0, 2);
    std::uniform_real_distribution<double> amp_dist(0.1, 1.0);
    std::uniform_real_distribution<double> power_exp(-5.0, -2.0);

    const auto tones = static_cast<std::size_t>(tones_dist(rng));
    const auto antennas = static_cast<std::size_t>(antennas_dist(rng));
    const double rhos[] = {0.3, 0.7, 1.0};
    const double rho = rhos[rho_dist(rng)];
    Instance inst{iid_rayleigh_channel(tones, antennas, rng()), WaveformDesign::zeros(tones, antennas)};

    const auto phases = matched_phases(inst.channel);
    auto& d = inst.design;
    for (std::size_t n = 0; n < tones; ++n)
        for (std::size_t m = 0; m < antennas; ++m) {
            const auto i = static_cast<Eigen::Index>(n);
            const auto j = static_cast<Eigen::Index>(m);
            d.multisine_amp(i, j) = amp_dist(rng);
            d.ofdm_amp(i, j) = amp_dist(rng);
        }
    d.multisine_phase = phases.multisine;
    d.ofdm_phase = phases.ofdm;
    // Total power P = 10^U(-5, -2) W, split evenly between the components.
    const double power = std::pow(10.0, power_exp(rng));
    d.multisine_amp *= std::sqrt(0.5 * power / d.multisine_power());
    d.ofdm_amp *= std::sqrt(0.5 * power / d.ofdm_power());
    d.rho = rho;
    return inst;
}

}  // namespace

ValidationReport run_validation(const RectennaModel& model, const ValidationOptions& options) {
    model.validate();
    std::vector<std::vector<ValidationRow>> per_instance(options.instances);
    parallel_for(options.instances, options.threads, [&](std::size_t k) {
        const std::uint64_t seed = derive_seed(options.seed, k);
        const Instance inst = random_instance(seed);
        const auto tones = inst.channel.tones();

        OracleConfig cfg;
        cfg.f0_multiple = 8;
        cfg.samples_per_period = 128;
        cfg.symbol_draws = options.symbol_draws;

        auto check = [&](const std::string& what, const WaveformDesign& d, double analytic, double tol) {
            const OracleEstimate o = oracle_zdc_estimate(d, inst.channel, model, cfg, derive_seed(seed, 7));
            ValidationRow row;
            row.instance = k;
            row.tones = tones;
            row.antennas = inst.channel.antennas();
            row.rho = d.rho;
            row.quantity = what;
            row.analytic = analytic;
            row.oracle = o.mean;
            row.oracle_std_error = o.std_error;
            row.rel_error = std::abs(analytic - o.mean) / std::abs(o.mean);
            row.tolerance = tol;
            row.pass = row.rel_error <= tol;
            per_instance[k].push_back(row);
        };

        WaveformDesign ms = inst.design;
        ms.ofdm_amp.setZero();
        ms.rho = 1.0;
        check("multisine", ms, zdc_multisine(ms, inst.channel, model), options.deterministic_tolerance);

        WaveformDesign of = inst.design;
        of.multisine_amp.setZero();
        of.rho = 1.0;
        check("ofdm", of, zdc_ofdm(of, inst.channel, model), options.monte_carlo_tolerance);

        check("superposed", inst.design, zdc_superposed(inst.design, inst.channel, model),
              options.monte_carlo_tolerance);
    });

    ValidationReport report;
    for (auto& rows : per_instance)
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    return report;
}

std::string format_validation_table(const ValidationReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%4s %2s %2s %4s %-11s %14s %14s %10s %8s  %s\n", "inst", "N", "M", "rho",
                  "quantity", "analytic", "oracle", "rel_err", "tol", "result");
    out << line;
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%4zu %2zu %2zu %4.1f %-11s %14.6e %14.6e %10.2e %8.1e  %s\n", r.instance,
                      r.tones, r.antennas, r.rho, r.quantity.c_str(), r.analytic, r.oracle, r.rel_error, r.tolerance,
                      r.pass ? "PASS" : "FAIL");
        out << line;
    }
    out << report.rows.size() - report.failures() << "/" << report.rows.size() << " checks passed\n";
    return out.str();
}

void write_validation_csv(const std::filesystem::path& path, const ValidationReport& report) {
    std::ostringstream out;
    out << "instance,N,M,rho,quantity,analytic,oracle,oracle_stderr,rel_error,tolerance,result\n";
    for (const auto& r : report.rows)
        out << r.instance << ',' << r.tones << ',' << r.antennas << ',' << format_number(r.rho) << ',' << r.quantity
            << ',' << format_number(r.analytic) << ',' << format_number(r.oracle) << ','
            << format_number(r.oracle_std_error) << ',' << format_number(r.rel_error) << ','
            << format_number(r.tolerance) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    write_text(path, out.str());
}

}  // namespace wipt
