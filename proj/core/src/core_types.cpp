#include "heatback/core_types.hpp"

#include <cmath>
#include <string>

namespace heatback {

TimeGrid::TimeGrid(double t0_, int m_) : t0(t0_), m(m_), dt(t0_ / m_) {
    if (!(t0_ > 0.0) || !std::isfinite(t0_))
        throw DomainError("TimeGrid: t0 must be positive and finite, got " + std::to_string(t0_));
    if (m_ < 2)
        throw DomainError("TimeGrid: need at least 2 intervals, got " + std::to_string(m_));
}

SampledFunction::SampledFunction(const TimeGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.samples())
        throw DimensionError("SampledFunction: expected " + std::to_string(grid.samples()) +
                             " samples, got " + std::to_string(values.size()));
    for (double x : values)
        if (!std::isfinite(x))
            throw DomainError("SampledFunction: non-finite sample");
}

void ProblemConfig::validate() const {
    if (!(x0 > 0.0 && x0 < 1.0))
        throw DomainError("ProblemConfig: x0 must lie in (0,1), got " + std::to_string(x0));
    if (!(t0 > 0.0) || !std::isfinite(t0))
        throw DomainError("ProblemConfig: t0 must be positive, got " + std::to_string(t0));
    if (m < 2)
        throw DomainError("ProblemConfig: m must be at least 2, got " + std::to_string(m));
    if (n_modes < 1)
        throw DomainError("ProblemConfig: n_modes must be at least 1, got " + std::to_string(n_modes));
    if (!(r1 > 0.0) || !std::isfinite(r1))
        throw DomainError("ProblemConfig: r1 must be positive, got " + std::to_string(r1));
}

std::vector<double> trapezoid_weights(const TimeGrid& g) {
    std::vector<double> w(static_cast<size_t>(g.samples()), g.dt);
    w.front() = 0.5 * g.dt;
    w.back() = 0.5 * g.dt;
    return w;
}

double l2_norm(const SampledFunction& f) {
    const double dt = f.grid.dt;
    const int m = f.grid.m;
    double s = 0.5 * (f[0] * f[0] + f[m] * f[m]);
    for (int i = 1; i < m; ++i) s += f[i] * f[i];
    return std::sqrt(s * dt);
}

double l2_distance(const SampledFunction& a, const SampledFunction& b) {
    if (a.grid != b.grid)
        throw DimensionError("l2_distance: grids differ");
    const double dt = a.grid.dt;
    const int m = a.grid.m;
    auto sq = [&](int i) { double d = a[i] - b[i]; return d * d; };
    double s = 0.5 * (sq(0) + sq(m));
    for (int i = 1; i < m; ++i) s += sq(i);
    return std::sqrt(s * dt);
}

std::pair<double, double> h2_seminorm_pair(const SampledFunction& h) {
    const int m = h.grid.m;
    if (m < 4)
        throw DomainError("h2_seminorm_pair: second difference needs m >= 4, got " + std::to_string(m));
    const double dt = h.grid.dt;

    double a = 0.5 * (h[0] * h[0] + h[m] * h[m]);
    for (int i = 1; i < m; ++i) a += h[i] * h[i];
    a *= dt;

    // h'' exists on nodes 1..m-1 only; trapezoid over [t_1, t_{m-1}].
    const double inv = 1.0 / (dt * dt);
    auto d2 = [&](int i) { return (h[i + 1] - 2.0 * h[i] + h[i - 1]) * inv; };
    double b = 0.5 * (d2(1) * d2(1) + d2(m - 1) * d2(m - 1));
    for (int i = 2; i < m - 1; ++i) b += d2(i) * d2(i);
    b *= dt;

    return {a, b};
}

} // namespace heatback
