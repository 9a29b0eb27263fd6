#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "heatback/error_analysis.hpp"
#include "heatback/errors.hpp"
#include "heatback/experiment.hpp"
#include "heatback/forward_solver.hpp"
#include "heatback/tikhonov_solver.hpp"
#include "heatback/volterra_operator.hpp"

namespace heatback::cli {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Routes output to a file when a path is given, stdout otherwise.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot write to " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

experiment::TruthProfile profile_of(const CliConfig& cfg) {
    return experiment::TruthProfile{experiment::profile_from_string(cfg.profile),
                                    cfg.scale_to_r1_fraction};
}

volterra::OperatorMatrix obtain_operator(const ProblemConfig& cfg, const std::string& cache) {
    if (cache.empty()) return volterra::assemble_operator(cfg);
    if (std::filesystem::exists(cache)) return volterra::load_operator(cache, cfg);
    volterra::OperatorMatrix a = volterra::assemble_operator(cfg);
    volterra::save_operator(a, cache);
    return a;
}

nlohmann::json bound_report_json(const analysis::ErrorBoundReport& rep) {
    nlohmann::json j;
    j["delta"] = rep.delta;
    j["r1"] = rep.r1;
    j["x0"] = rep.x0;
    j["tau_bar"] = rep.tau_bar;
    j["bound"] = rep.bound;
    j["asymptotic_valid"] = rep.asymptotic_valid;
    j["tau0"] = rep.tau0;
    j["r2"] = rep.r2;
    j["note"] = rep.note;
    return j;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void write_trace_csv(std::ostream& out, const SampledFunction& f) {
    out << "t,value\n";
    for (int i = 0; i < f.size(); ++i)
        out << format_double(f.grid.t(i)) << ',' << format_double(f[i]) << '\n';
}

SampledFunction read_trace_csv(const std::string& path, const TimeGrid& grid) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);

    std::vector<double> times, values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.find_first_not_of("+-.0123456789eE, \t") != std::string::npos)
            continue;  // header row

        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError(path + ": line " + std::to_string(line_no) + " is not 't,value'");
        try {
            size_t p1 = 0, p2 = 0;
            const std::string ts = line.substr(0, comma);
            const std::string vs = line.substr(comma + 1);
            const double t = std::stod(ts, &p1);
            const double v = std::stod(vs, &p2);
            if (p1 != ts.size() || p2 != vs.size())
                throw std::invalid_argument("trailing characters");
            times.push_back(t);
            values.push_back(v);
        } catch (const std::exception&) {
            throw DomainError(path + ": malformed number on line " + std::to_string(line_no));
        }
    }

    if (static_cast<int>(values.size()) != grid.samples())
        throw DimensionError(path + ": expected " + std::to_string(grid.samples()) +
                             " samples for the configured grid, found " +
                             std::to_string(values.size()));
    const double tol = 1e-9 * std::max(1.0, grid.t0);
    for (int i = 0; i <= grid.m; ++i) {
        if (std::abs(times[static_cast<size_t>(i)] - grid.t(i)) > tol)
            throw DomainError(path + ": sample times do not conform to the configured grid");
    }
    return SampledFunction(grid, std::move(values));
}

int cmd_forward(const CliConfig& cfg, const ForwardArgs& args) {
    const ProblemConfig p = cfg.problem();
    const double x = args.x < 0.0 ? p.x0 : args.x;

    SampledFunction h;
    if (args.h_input.empty()) {
        h = experiment::generate_truth(profile_of(cfg), p);
    } else {
        h = read_trace_csv(args.h_input, p.grid());
    }

    const SampledFunction u = forward::solve_forward(h, x, p);
    OutputTarget target(args.out);
    write_trace_csv(target.stream(), u);
    return 0;
}

int cmd_invert(const CliConfig& cfg, const InvertArgs& args) {
    const ProblemConfig p = cfg.problem();
    const SampledFunction f = read_trace_csv(args.f_input, p.grid());

    if ((args.delta_rel < 0.0) == (args.delta_abs < 0.0))
        throw DomainError("invert: provide exactly one of --delta and --delta-abs");
    const double fnorm = l2_norm(f);
    const double delta = args.delta_abs >= 0.0 ? args.delta_abs : args.delta_rel * fnorm;

    const analysis::ErrorBoundReport rep = analysis::error_bound(delta, p.r1, p.x0);
    nlohmann::json summary;
    summary["delta"] = delta;
    summary["bound"] = rep.bound;
    summary["asymptotic_valid"] = rep.asymptotic_valid;

    if (fnorm <= delta) {
        // The residual equation ||A h_alpha - f|| = delta needs ||f|| > delta:
        // otherwise even the zero reconstruction already fits within the noise.
        std::cerr << "warning: noise level " << format_double(delta)
                  << " reaches the measurement norm " << format_double(fnorm)
                  << "; solvability of the discrepancy equation requires ||f|| > delta."
                  << " Emitting the zero reconstruction.\n";
        std::ofstream hout(args.out, std::ios::binary);
        if (!hout) throw IoError("cannot write to " + args.out);
        write_trace_csv(hout, SampledFunction(p.grid()));
        summary["alpha"] = 0.0;
        summary["residual"] = fnorm;
        OutputTarget target(args.summary_out);
        target.stream() << summary.dump(2) << '\n';
        return 2;
    }

    tikhonov::TikhonovSolver solver(obtain_operator(p, args.operator_cache));
    const tikhonov::RegularizedSolution sol = solver.select_alpha(f, delta);

    std::ofstream hout(args.out, std::ios::binary);
    if (!hout) throw IoError("cannot write to " + args.out);
    write_trace_csv(hout, sol.h);

    summary["alpha"] = sol.alpha;
    summary["residual"] = sol.residual;
    OutputTarget target(args.summary_out);
    target.stream() << summary.dump(2) << '\n';
    return 0;
}

int cmd_bound(const BoundArgs& args) {
    const analysis::ErrorBoundReport rep = analysis::error_bound(args.delta, args.r1, args.x0);
    OutputTarget target(args.out);
    target.stream() << bound_report_json(rep).dump(2) << '\n';
    return 0;
}

int cmd_sweep(const CliConfig& cfg, const SweepArgs& args) {
    const ProblemConfig p = cfg.problem();
    if (cfg.deltas.empty() || cfg.seeds.empty())
        throw DomainError("sweep: deltas and seeds must be nonempty");

    experiment::DataOptions opts;
    opts.use_fd_oracle = cfg.oracle_forward;
    const experiment::Instance inst = experiment::make_instance(p, profile_of(cfg), opts);

    // Configured noise levels are relative to the clean measurement norm.
    const double fnorm = l2_norm(inst.f0);
    std::vector<double> abs_deltas;
    abs_deltas.reserve(cfg.deltas.size());
    for (double d : cfg.deltas) abs_deltas.push_back(d * fnorm);

    const std::vector<experiment::ExperimentRecord> records =
        experiment::sweep_on(inst, abs_deltas, cfg.seeds);

    std::ofstream csv(args.out, std::ios::binary);
    if (!csv) throw IoError("cannot write to " + args.out);
    experiment::write_csv(csv, records);

    nlohmann::json summary;
    summary["f0_norm"] = fnorm;
    summary["records"] = records.size();
    int asymptotic_count = 0;
    int violations = 0;
    nlohmann::json per_delta = nlohmann::json::array();
    for (size_t di = 0; di < cfg.deltas.size(); ++di) {
        std::vector<double> errs, alphas, ratios;
        for (const auto& rec : records) {
            if (rec.delta != abs_deltas[di]) continue;
            errs.push_back(rec.measured_error);
            alphas.push_back(rec.alpha);
            if (rec.bound_two_omega > 0.0)
                ratios.push_back(rec.measured_error / rec.bound_two_omega);
            if (rec.bound_report.asymptotic_valid) {
                ++asymptotic_count;
                if (rec.measured_error > rec.bound_two_omega) ++violations;
            }
        }
        nlohmann::json entry;
        entry["delta_rel"] = cfg.deltas[di];
        entry["delta"] = abs_deltas[di];
        entry["median_error"] = median(errs);
        entry["median_alpha"] = median(alphas);
        entry["median_error_to_bound"] = median(ratios);
        per_delta.push_back(entry);
    }
    summary["per_delta"] = per_delta;
    summary["asymptotic_records"] = asymptotic_count;
    summary["bound_violations"] = violations;

    OutputTarget target(args.summary_out);
    target.stream() << summary.dump(2) << '\n';
    return 0;
}

int cmd_dump_operator(const CliConfig& cfg, const DumpOperatorArgs& args) {
    const ProblemConfig p = cfg.problem();
    const volterra::OperatorMatrix a = volterra::assemble_operator(p);
    volterra::save_operator(a, args.out);
    return 0;
}

int run_mapped(const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NoiseDominatesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BracketingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace heatback::cli
