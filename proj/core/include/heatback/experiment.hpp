#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heatback/core_types.hpp"
#include "heatback/error_analysis.hpp"
#include "heatback/tikhonov_solver.hpp"

namespace heatback::experiment {

// Built-in boundary temperature profiles. Every profile vanishes at t = 0
// and t = t0 together with its first difference, so the sampled history is
// admissible for the forward solver.
enum class ProfileKind {
    poly_bump,    // c * t^2 (t0 - t)^2
    sine_bump,    // c * sin^2(pi t / t0) * sin(2 pi t / t0)
    double_bump,  // two quartic bumps of opposite weight
};

std::string to_string(ProfileKind kind);
ProfileKind profile_from_string(const std::string& name);

struct TruthProfile {
    ProfileKind kind = ProfileKind::poly_bump;
    // The sampled profile is scaled so that its discrete H2 norm equals
    // this fraction of the configured smoothness radius r1.
    double scale_to_r1_fraction = 1.0;
};

// Controls how synthetic measurement data is produced.
struct DataOptions {
    // When set, data comes from the Crank-Nicolson finite difference oracle
    // instead of the refined-grid series evaluation.
    bool use_fd_oracle = false;
    int fd_x_points = 401;
};

// One reconstruction run: configuration, noise draw, selected alpha, and
// the measured error next to its a priori bound.
struct ExperimentRecord {
    ProblemConfig config;
    TruthProfile profile;
    double delta = 0.0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double measured_error = 0.0;
    double bound_two_omega = 0.0;
    double residual = 0.0;
    double wall_time_seconds = 0.0;
    analysis::ErrorBoundReport bound_report;
};

// Samples the exact boundary history on the configured grid, scaled so the
// discrete H2 norm equals profile.scale_to_r1_fraction * cfg.r1.
SampledFunction generate_truth(const TruthProfile& profile, const ProblemConfig& cfg);

// Adds a Gaussian perturbation rescaled so that the discrete L2 distance to
// the input equals delta exactly. delta == 0 returns the input unchanged.
SampledFunction add_noise(const SampledFunction& f0, double delta, std::uint64_t seed);

// Exact boundary history together with its noise-free interior trace at
// cfg.x0. The trace is evaluated on a grid twice as fine and restricted,
// so it does not coincide with the discrete operator applied to the truth.
struct SyntheticData {
    SampledFunction h0;
    SampledFunction f0;
    double scale = 0.0;  // multiplier applied to the raw profile shape
};

SyntheticData synthesize_data(const TruthProfile& profile, const ProblemConfig& cfg,
                              const DataOptions& opts = {});

// A prepared problem instance: assembled operator plus the exact data it
// will be asked to recover. Reusable across noise levels and seeds.
struct Instance {
    ProblemConfig config;
    TruthProfile profile;
    tikhonov::TikhonovSolver solver;
    SampledFunction h0;
    SampledFunction f0;
    double r1_true = 0.0;  // discrete H2 norm of h0
};

Instance make_instance(const ProblemConfig& cfg, const TruthProfile& profile,
                       const DataOptions& opts = {});

ExperimentRecord run_on(const Instance& inst, double delta, std::uint64_t seed);

// Convenience wrapper that assembles a fresh instance for a single run.
ExperimentRecord run_experiment(const ProblemConfig& cfg, const TruthProfile& profile,
                                double delta, std::uint64_t seed,
                                const DataOptions& opts = {});

// Cartesian sweep over noise levels (outer) and seeds (inner), reusing one
// assembled instance.
std::vector<ExperimentRecord> sweep_on(const Instance& inst,
                                       const std::vector<double>& deltas,
                                       const std::vector<std::uint64_t>& seeds);

std::vector<ExperimentRecord> sweep(const ProblemConfig& cfg, const TruthProfile& profile,
                                    const std::vector<double>& deltas,
                                    const std::vector<std::uint64_t>& seeds,
                                    const DataOptions& opts = {});

std::string csv_header();
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

}  // namespace heatback::experiment
