#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heatback/core_types.hpp"

namespace heatback::cli {

// Everything a config file can carry. Flags are applied on top of the file,
// so a flag always wins over the corresponding file entry.
struct CliConfig {
    double x0 = 0.5;
    double t0 = 1.0;
    int m = 800;
    int n_modes = 0;  // 0 picks the automatic truncation for the grid
    double r1 = 1.0;
    std::string profile = "poly_bump";
    double scale_to_r1_fraction = 1.0;
    std::vector<double> deltas = {1e-2, 1e-3, 1e-4};
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    bool oracle_forward = false;

    friend bool operator==(const CliConfig&, const CliConfig&) = default;

    // ProblemConfig with n_modes resolved; validates ranges.
    ProblemConfig problem() const;
};

// Optional per-field replacements collected from command line flags.
struct CliOverrides {
    std::optional<double> x0;
    std::optional<double> t0;
    std::optional<int> m;
    std::optional<int> n_modes;
    std::optional<double> r1;
    std::optional<std::string> profile;
    std::optional<double> scale_to_r1_fraction;
    std::optional<std::vector<double>> deltas;
    std::optional<std::vector<std::uint64_t>> seeds;
    std::optional<bool> oracle_forward;
};

void apply_overrides(CliConfig& cfg, const CliOverrides& o);

// Line-oriented "key = value" text; '#' starts a comment, lists are comma
// separated. Unknown keys and malformed values throw DomainError.
CliConfig parse_key_value(const std::string& text);
std::string to_key_value(const CliConfig& cfg);

// JSON object with the same field names.
CliConfig parse_json_config(const std::string& text);
std::string to_json_config(const CliConfig& cfg);

// Reads a config file, dispatching on the ".json" extension. Missing or
// unreadable files throw IoError; malformed content throws DomainError.
CliConfig load_config(const std::string& path);

}  // namespace heatback::cli
