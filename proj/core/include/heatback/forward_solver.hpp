#pragma once

#include <Eigen/Dense>

#include "heatback/core_types.hpp"

namespace heatback::forward {

// Solution samples u(x_j, t_k) of the direct problem on [0,1] x [0,t0].
// Column k holds the spatial profile at time t_k; values(.,0) is zero
// (rest initial state) and the x=1 row is zero (cold far boundary).
struct TemperatureField {
    std::vector<double> xgrid;
    TimeGrid tgrid;
    Eigen::MatrixXd values; // (space nodes) x (time samples)
};

// One sine-series coefficient history v_n(t); v_n(0) = 0 always.
struct ModeCoefficients {
    int n = 1;
    SampledFunction v;
};

// Series truncation that keeps the tail of the mode sum below roundoff
// for one time step: N = max(400, ceil(4 / (pi sqrt(dt)))). The floor is
// what makes doubling N move the sensor trace by less than 1e-8 relative.
int default_mode_count(const TimeGrid& g);

// Integrates v' + (pi n)^2 v = -(2/(pi n)) h'(t), v(0)=0, treating h as
// piecewise linear, so h' is constant per interval and each step is exact:
//   v(t_{i+1}) = E v(t_i) - B h'_i,  E = exp(-lambda dt),
//   B = (2/((pi n) lambda)) (1 - E),  lambda = (pi n)^2.
// Requires n >= 1 and h(0) = 0.
ModeCoefficients evolve_mode(int n, const SampledFunction& h);

// Trace u(x,.) = (1-x) h + sum_{n=1}^{N} v_n sin(pi n x), N = cfg.n_modes.
// Requires x in [0,1] and h vanishing at both ends of the grid.
SampledFunction solve_forward(const SampledFunction& h, double x, const ProblemConfig& cfg);

// Crank-Nicolson oracle for u_t = u_xx, u(0,t)=h(t), u(1,t)=0, u(x,0)=0,
// on x_points uniform space intervals (x_points >= 8). Second order in
// space and time; test/verification use only.
TemperatureField fd_oracle_solve(const SampledFunction& h, int x_points, const ProblemConfig& cfg);

// Linear interpolation of a field's trace at sensor position x in [0,1].
SampledFunction trace_at(const TemperatureField& field, double x);

namespace detail {
// Series trace without the endpoint precondition on h. Operator assembly
// feeds hat basis functions through this, including the two boundary hats.
SampledFunction series_trace(const SampledFunction& h, double x, const ProblemConfig& cfg);
} // namespace detail

} // namespace heatback::forward
