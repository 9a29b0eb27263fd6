#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "cli_config.hpp"
#include "heatback/core_types.hpp"

namespace heatback::cli {

struct ForwardArgs {
    std::string h_input;  // empty: sample the configured profile
    double x = -1.0;      // negative: use the configured x0
    std::string out;      // empty: stdout
};

struct InvertArgs {
    std::string f_input;
    double delta_rel = -1.0;  // relative to the measurement norm
    double delta_abs = -1.0;  // exactly one of the two must be set
    std::string out = "h_reconstructed.csv";
    std::string summary_out;  // empty: stdout
    std::string operator_cache;
};

struct BoundArgs {
    double delta = 0.0;
    double r1 = 0.0;
    double x0 = 0.5;
    std::string out;  // empty: stdout
};

struct SweepArgs {
    std::string out = "sweep.csv";
    std::string summary_out;  // empty: stdout
};

struct DumpOperatorArgs {
    std::string out;
};

int cmd_forward(const CliConfig& cfg, const ForwardArgs& args);
int cmd_invert(const CliConfig& cfg, const InvertArgs& args);
int cmd_bound(const BoundArgs& args);
int cmd_sweep(const CliConfig& cfg, const SweepArgs& args);
int cmd_dump_operator(const CliConfig& cfg, const DumpOperatorArgs& args);

// Runs the body and maps exceptions to the documented exit codes:
// 0 success, 1 usage or parse, 2 numerical or solvability, 3 I/O.
int run_mapped(const std::function<int()>& body);

// Trace CSV: "t,value" header, one row per grid node, 17 significant digits.
void write_trace_csv(std::ostream& out, const SampledFunction& f);
SampledFunction read_trace_csv(const std::string& path, const TimeGrid& grid);

}  // namespace heatback::cli
