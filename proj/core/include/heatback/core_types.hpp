#pragma once

#include <utility>
#include <vector>

#include "heatback/errors.hpp"

namespace heatback {

// Uniform discretization of [0, t0] into m intervals, m+1 sample points.
struct TimeGrid {
    double t0 = 1.0;
    int m = 2;
    double dt = 0.5;

    TimeGrid() = default;
    TimeGrid(double t0_, int m_);

    double t(int i) const { return static_cast<double>(i) * dt; }
    int samples() const { return m + 1; }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

// Real-valued samples on a TimeGrid; the mathematical object is the
// piecewise-linear interpolant through (t_i, values[i]).
struct SampledFunction {
    TimeGrid grid;
    std::vector<double> values;

    SampledFunction() : values(grid.samples(), 0.0) {}
    explicit SampledFunction(const TimeGrid& g) : grid(g), values(g.samples(), 0.0) {}
    // Validates length and finiteness; throws DimensionError / DomainError.
    SampledFunction(const TimeGrid& g, std::vector<double> v);

    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Problem instance: sensor location, time horizon, discretization, series
// truncation, and the smoothness-class radius r1 bounding ||h||^2 + ||h''||^2.
struct ProblemConfig {
    double x0 = 0.5;
    double t0 = 1.0;
    int m = 800;
    int n_modes = 400;
    double r1 = 1.0;

    // Throws DomainError on any violated range.
    void validate() const;
    TimeGrid grid() const { return TimeGrid(t0, m); }
};

// Trapezoidal quadrature weights: dt/2 at both ends, dt inside.
std::vector<double> trapezoid_weights(const TimeGrid& g);

// Discrete L2[0, t0] norm, sqrt(sum w_i f_i^2) with trapezoidal weights.
double l2_norm(const SampledFunction& f);

// l2_norm(a - b); grids must match.
double l2_distance(const SampledFunction& a, const SampledFunction& b);

// (||h||^2, ||h''||^2) with h'' the second central difference on interior
// nodes and each norm integrated by trapezoid over its own support.
// Requires m >= 4 (DomainError otherwise).
std::pair<double, double> h2_seminorm_pair(const SampledFunction& h);

} // namespace heatback
