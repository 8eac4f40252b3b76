#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "wipt/config.hpp"

namespace wipt {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;  // validation table contains a FAIL
inline constexpr int schema = 2;
inline constexpr int all_infeasible = 3;
inline constexpr int io = 4;
}  // namespace exit_code

/// Command-line values that replace the corresponding config entries.
struct RunOverrides {
    std::optional<std::filesystem::path> output_dir;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;  // replaces the top-level seed before parsing
};

/// Loads, resolves and runs one config. Errors are reported on `log` and
/// mapped to the exit codes above; nothing is thrown.
int run_config_file(const std::filesystem::path& path, const RunOverrides& overrides, std::ostream& log);

/// Runs a resolved config and writes its artifacts plus manifest.json.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// The oracle suite with the default rectenna; writes validation.csv when an
/// output directory is given.
int run_validate_command(bool quick, const RunOverrides& overrides, std::ostream& log);

}  // namespace wipt
