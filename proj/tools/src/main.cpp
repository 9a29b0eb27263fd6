#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_config.hpp"
#include "commands.hpp"

namespace cli = heatback::cli;

int main(int argc, char** argv) {
    CLI::App app{
        "heatback: recovers the boundary temperature history of a rod from an "
        "interior sensor trace, with forward solves, error bounds, and "
        "experiment sweeps for synthetic studies."};
    app.require_subcommand(1);

    std::string config_path;
    cli::CliOverrides ov;
    auto add_problem_flags = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Config file: key = value lines, or .json");
        sub->add_option("--x0", ov.x0, "Sensor position in (0,1)");
        sub->add_option("--t0", ov.t0, "Time horizon");
        sub->add_option("--m", ov.m, "Number of time intervals");
        sub->add_option("--n-modes", ov.n_modes, "Series truncation; 0 picks it from the grid");
        sub->add_option("--r1", ov.r1, "Smoothness-class radius");
        sub->add_option("--profile", ov.profile,
                        "Truth profile: poly_bump, sine_bump, double_bump");
        sub->add_option("--scale", ov.scale_to_r1_fraction,
                        "Truth norm as a fraction of r1, in (0,1]");
    };

    auto* fwd = app.add_subcommand("forward",
                                   "Solve the direct problem and write the trace u(x,.)");
    cli::ForwardArgs fargs;
    add_problem_flags(fwd);
    fwd->add_option("--x", fargs.x, "Trace position in [0,1]; defaults to x0")
        ->check(CLI::Range(0.0, 1.0));
    fwd->add_option("--h-input", fargs.h_input,
                    "Boundary history CSV (t,value); the profile is sampled when omitted");
    fwd->add_option("--out", fargs.out, "Output CSV path; stdout when omitted");

    auto* inv = app.add_subcommand("invert",
                                   "Reconstruct the boundary history from a measurement CSV");
    cli::InvertArgs iargs;
    add_problem_flags(inv);
    inv->add_option("--f-input", iargs.f_input, "Measurement CSV on the configured grid")
        ->required();
    auto* opt_drel = inv->add_option("--delta", iargs.delta_rel,
                                     "Noise level relative to the measurement norm")
                         ->check(CLI::NonNegativeNumber);
    auto* opt_dabs = inv->add_option("--delta-abs", iargs.delta_abs, "Absolute noise level")
                         ->check(CLI::NonNegativeNumber);
    opt_drel->excludes(opt_dabs);
    opt_dabs->excludes(opt_drel);
    inv->add_option("--out", iargs.out, "Reconstruction CSV path");
    inv->add_option("--summary-out", iargs.summary_out, "Summary JSON path; stdout when omitted");
    inv->add_option("--operator-cache", iargs.operator_cache,
                    "Operator cache file; loaded when present, created otherwise");

    auto* bnd = app.add_subcommand("bound", "Evaluate the a priori reconstruction error bound");
    cli::BoundArgs bargs;
    bnd->add_option("--delta", bargs.delta, "Absolute noise level")->required();
    bnd->add_option("--r1", bargs.r1, "Smoothness-class radius")->required();
    bnd->add_option("--x0", bargs.x0, "Sensor position in (0,1)")->required();
    bnd->add_option("--out", bargs.out, "Output JSON path; stdout when omitted");

    auto* swp = app.add_subcommand("sweep",
                                   "Run the noise-level x seed experiment grid, write CSV records");
    cli::SweepArgs sargs;
    add_problem_flags(swp);
    std::vector<double> deltas_flag;
    std::vector<std::uint64_t> seeds_flag;
    bool oracle_flag = false;
    auto* opt_deltas = swp->add_option("--delta", deltas_flag,
                                       "Relative noise levels (comma separated or repeated)")
                           ->delimiter(',');
    auto* opt_seeds = swp->add_option("--seed", seeds_flag,
                                      "Noise seeds (comma separated or repeated)")
                          ->delimiter(',');
    auto* opt_oracle = swp->add_flag("--oracle-forward", oracle_flag,
                                     "Synthesize data with the finite difference oracle");
    swp->add_option("--out", sargs.out, "Records CSV path");
    swp->add_option("--summary-out", sargs.summary_out, "Summary JSON path; stdout when omitted");

    auto* dmp = app.add_subcommand("dump-operator",
                                   "Assemble the forward operator and write its binary cache");
    cli::DumpOperatorArgs dargs;
    add_problem_flags(dmp);
    dmp->add_option("--out", dargs.out, "Cache file path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    return cli::run_mapped([&]() -> int {
        cli::CliConfig cfg;
        if (!config_path.empty()) cfg = cli::load_config(config_path);
        if (opt_deltas->count() > 0) ov.deltas = deltas_flag;
        if (opt_seeds->count() > 0) ov.seeds = seeds_flag;
        if (opt_oracle->count() > 0) ov.oracle_forward = true;
        cli::apply_overrides(cfg, ov);

        if (app.got_subcommand(fwd)) return cli::cmd_forward(cfg, fargs);
        if (app.got_subcommand(inv)) return cli::cmd_invert(cfg, iargs);
        if (app.got_subcommand(bnd)) return cli::cmd_bound(bargs);
        if (app.got_subcommand(swp)) return cli::cmd_sweep(cfg, sargs);
        if (app.got_subcommand(dmp)) return cli::cmd_dump_operator(cfg, dargs);
        return 1;
    });
}
