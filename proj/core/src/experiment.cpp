#include "heatback/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <utility>

#include "heatback/errors.hpp"
#include "heatback/forward_solver.hpp"
#include "heatback/volterra_operator.hpp"

namespace heatback::experiment {

namespace {

constexpr double kPi = std::numbers::pi;

// Raw (unscaled) profile shapes. All vanish to second order at both ends.
double shape_value(ProfileKind kind, double t, double t0) {
    switch (kind) {
        case ProfileKind::poly_bump: {
            const double s = t * (t0 - t);
            return s * s;
        }
        case ProfileKind::sine_bump: {
            const double s = std::sin(kPi * t / t0);
            return s * s * std::sin(2.0 * kPi * t / t0);
        }
        case ProfileKind::double_bump: {
            auto bump = [](double x, double a, double b) {
                if (x <= a || x >= b) return 0.0;
                const double s = (x - a) * (b - x);
                return s * s;
            };
            const double first = bump(t, 0.10 * t0, 0.45 * t0);
            const double second = bump(t, 0.55 * t0, 0.90 * t0);
            return first + 0.6 * second;
        }
    }
    throw DomainError("unknown profile kind");
}

SampledFunction sample_shape(ProfileKind kind, const TimeGrid& grid) {
    SampledFunction h(grid);
    for (int i = 0; i <= grid.m; ++i) {
        h.values[i] = shape_value(kind, grid.t(i), grid.t0);
    }
    // The shapes vanish at both ends analytically; pin the samples so the
    // solver's endpoint precondition is not left to sin(pi) or m*dt - t0
    // cancelling in floating point.
    h.values.front() = 0.0;
    h.values.back() = 0.0;
    return h;
}

}  // namespace

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::poly_bump: return "poly_bump";
        case ProfileKind::sine_bump: return "sine_bump";
        case ProfileKind::double_bump: return "double_bump";
    }
    throw DomainError("unknown profile kind");
}

ProfileKind profile_from_string(const std::string& name) {
    if (name == "poly_bump") return ProfileKind::poly_bump;
    if (name == "sine_bump") return ProfileKind::sine_bump;
    if (name == "double_bump") return ProfileKind::double_bump;
    throw DomainError("unknown profile name: " + name);
}

namespace {

// Multiplier that normalizes the raw shape so its discrete H2 norm equals
// scale_to_r1_fraction * r1 on the configured grid.
double truth_scale(const TruthProfile& profile, const ProblemConfig& cfg) {
    if (!(profile.scale_to_r1_fraction > 0.0) || profile.scale_to_r1_fraction > 1.0) {
        throw DomainError("scale_to_r1_fraction must lie in (0, 1]");
    }
    SampledFunction raw = sample_shape(profile.kind, cfg.grid());
    const auto [l2sq, h2sq] = h2_seminorm_pair(raw);
    const double norm = std::sqrt(l2sq + h2sq);
    if (!(norm > 0.0)) throw DomainError("profile is identically zero on this grid");
    return profile.scale_to_r1_fraction * cfg.r1 / norm;
}

}  // namespace

SampledFunction generate_truth(const TruthProfile& profile, const ProblemConfig& cfg) {
    cfg.validate();
    const double c = truth_scale(profile, cfg);
    SampledFunction h = sample_shape(profile.kind, cfg.grid());
    for (double& v : h.values) v *= c;
    return h;
}

SampledFunction add_noise(const SampledFunction& f0, double delta, std::uint64_t seed) {
    if (delta < 0.0) throw DomainError("noise level must be nonnegative");
    if (delta == 0.0) return f0;

    SampledFunction noise(f0.grid);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : noise.values) v = gauss(rng);

    // Rescale the draw so the weighted L2 perturbation is exactly delta.
    const double raw = l2_norm(noise);
    if (!(raw > 0.0)) throw DomainError("degenerate noise draw");
    const double s = delta / raw;

    SampledFunction f = f0;
    for (int i = 0; i < f.size(); ++i) f.values[i] += s * noise.values[i];
    return f;
}

SyntheticData synthesize_data(const TruthProfile& profile, const ProblemConfig& cfg,
                              const DataOptions& opts) {
    cfg.validate();
    const TimeGrid coarse = cfg.grid();

    // Scale factor comes from the coarse grid, where r1_true is measured.
    const double scale = truth_scale(profile, cfg);
    SampledFunction h0 = generate_truth(profile, cfg);

    SampledFunction f0(coarse);
    if (opts.use_fd_oracle) {
        const auto field = forward::fd_oracle_solve(h0, opts.fd_x_points, cfg);
        f0 = forward::trace_at(field, cfg.x0);
    } else {
        // Evaluate the series on a grid twice as fine with the same scale,
        // then keep every second sample. The restriction breaks the exact
        // algebraic identity between data and the assembled operator.
        ProblemConfig fine_cfg = cfg;
        fine_cfg.m = 2 * cfg.m;
        const TimeGrid fine = fine_cfg.grid();
        SampledFunction h_fine = sample_shape(profile.kind, fine);
        for (double& v : h_fine.values) v *= scale;
        const SampledFunction f_fine = forward::solve_forward(h_fine, cfg.x0, fine_cfg);
        for (int i = 0; i <= coarse.m; ++i) f0.values[i] = f_fine.values[2 * i];
    }

    return SyntheticData{std::move(h0), std::move(f0), scale};
}

Instance make_instance(const ProblemConfig& cfg, const TruthProfile& profile,
                       const DataOptions& opts) {
    SyntheticData data = synthesize_data(profile, cfg, opts);
    const auto [l2sq, h2sq] = h2_seminorm_pair(data.h0);
    const double r1_true = std::sqrt(l2sq + h2sq);
    tikhonov::TikhonovSolver solver(volterra::assemble_operator(cfg));
    return Instance{cfg, profile, std::move(solver), std::move(data.h0),
                    std::move(data.f0), r1_true};
}

ExperimentRecord run_on(const Instance& inst, double delta, std::uint64_t seed) {
    const SampledFunction f_delta = add_noise(inst.f0, delta, seed);

    const auto start = std::chrono::steady_clock::now();
    const tikhonov::RegularizedSolution sol = inst.solver.select_alpha(f_delta, delta);
    const auto stop = std::chrono::steady_clock::now();

    ExperimentRecord rec;
    rec.config = inst.config;
    rec.profile = inst.profile;
    rec.delta = delta;
    rec.seed = seed;
    rec.alpha = sol.alpha;
    rec.measured_error = l2_distance(sol.h, inst.h0);
    rec.residual = sol.residual;
    rec.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
    rec.bound_report = analysis::error_bound(delta, inst.r1_true, inst.config.x0);
    rec.bound_two_omega = 2.0 * rec.bound_report.bound;
    return rec;
}

ExperimentRecord run_experiment(const ProblemConfig& cfg, const TruthProfile& profile,
                                double delta, std::uint64_t seed,
                                const DataOptions& opts) {
    return run_on(make_instance(cfg, profile, opts), delta, seed);
}

std::vector<ExperimentRecord> sweep_on(const Instance& inst,
                                       const std::vector<double>& deltas,
                                       const std::vector<std::uint64_t>& seeds) {
    std::vector<ExperimentRecord> records;
    records.reserve(deltas.size() * seeds.size());
    for (double delta : deltas) {
        for (std::uint64_t seed : seeds) {
            records.push_back(run_on(inst, delta, seed));
        }
    }
    return records;
}

std::vector<ExperimentRecord> sweep(const ProblemConfig& cfg, const TruthProfile& profile,
                                    const std::vector<double>& deltas,
                                    const std::vector<std::uint64_t>& seeds,
                                    const DataOptions& opts) {
    return sweep_on(make_instance(cfg, profile, opts), deltas, seeds);
}

std::string csv_header() {
    return "x0,t0,m,n_modes,r1,profile,scale_to_r1_fraction,delta,seed,"
           "alpha,measured_error,bound2omega,residual,wall_time";
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << csv_header() << '\n';
    for (const ExperimentRecord& r : records) {
        out << num(r.config.x0) << ',' << num(r.config.t0) << ',' << r.config.m << ','
            << r.config.n_modes << ',' << num(r.config.r1) << ','
            << to_string(r.profile.kind) << ',' << num(r.profile.scale_to_r1_fraction)
            << ',' << num(r.delta) << ',' << r.seed << ',' << num(r.alpha) << ','
            << num(r.measured_error) << ',' << num(r.bound_two_omega) << ','
            << num(r.residual) << ',' << num(r.wall_time_seconds) << '\n';
    }
}

}  // namespace heatback::experiment
