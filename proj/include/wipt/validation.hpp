#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wipt/rectenna.hpp"

namespace wipt {

struct ValidationOptions {
    std::size_t instances = 20;
    int symbol_draws = 100000;
    double deterministic_tolerance = 1e-9;
    double monte_carlo_tolerance = 0.02;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Instance count and symbol draws for `wipt-opt validate --quick`.
ValidationOptions quick_validation_options();

struct ValidationRow {
    std::size_t instance = 0;
    std::size_t tones = 0;
    std::size_t antennas = 0;
    double rho = 1.0;
    std::string quantity;  // multisine, ofdm or superposed
    double analytic = 0.0;
    double oracle = 0.0;
    double oracle_std_error = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;

    std::size_t failures() const;
    bool passed() const { return failures() == 0; }
};

/// Random small instances (N <= 4, M <= 2, CN(0, 1) channels, random positive
/// amplitudes, matched phases, rho in {0.3, 0.7, 1.0}). Each instance compares
/// the closed forms of the multisine, OFDM and superposed z_DC against the
/// time-domain oracle.
ValidationReport run_validation(const RectennaModel& model, const ValidationOptions& options);

std::string format_validation_table(const ValidationReport& report);
void write_validation_csv(const std::filesystem::path& path, const ValidationReport& report);

}  // namespace wipt
