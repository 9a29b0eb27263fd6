#include "heatback/forward_solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace heatback::forward {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(const SampledFunction& h, const ProblemConfig& cfg) {
    if (h.grid != cfg.grid())
        throw DimensionError("forward: h grid does not match cfg grid");
}

} // namespace

int default_mode_count(const TimeGrid& g) {
    const int from_step = static_cast<int>(std::ceil(4.0 / (kPi * std::sqrt(g.dt))));
    return std::max(400, from_step);
}

ModeCoefficients evolve_mode(int n, const SampledFunction& h) {
    if (n < 1)
        throw DomainError("evolve_mode: mode index must be >= 1, got " + std::to_string(n));
    if (h[0] != 0.0)
        throw DomainError("evolve_mode: h(0) must vanish");

    const TimeGrid& g = h.grid;
    const double lambda = (kPi * n) * (kPi * n);
    const double e = std::exp(-lambda * g.dt);
    // 1 - exp(-x) via expm1 keeps B accurate when lambda*dt is small.
    const double b = 2.0 / (kPi * n * lambda) * (-std::expm1(-lambda * g.dt));

    ModeCoefficients out{n, SampledFunction(g)};
    double v = 0.0;
    for (int i = 0; i < g.m; ++i) {
        const double hp = (h[i + 1] - h[i]) / g.dt;
        v = e * v - b * hp;
        out.v[i + 1] = v;
    }
    return out;
}

namespace detail {

SampledFunction series_trace(const SampledFunction& h, double x, const ProblemConfig& cfg) {
    cfg.validate();
    check_grid(h, cfg);
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("series_trace: x must lie in [0,1], got " + std::to_string(x));

    const TimeGrid g = h.grid;
    const int m = g.m;

    // At the boundaries the series is exact without summation: every sine
    // factor vanishes at x = 0 and x = 1, leaving (1-x) h.
    if (x == 0.0) return h;
    if (x == 1.0) return SampledFunction(g);

    std::vector<double> hp(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) hp[static_cast<size_t>(i)] = (h[i + 1] - h[i]) / g.dt;

    SampledFunction u(g);
    for (int i = 0; i <= m; ++i) u[i] = (1.0 - x) * h[i];

    // Fixed ascending mode order keeps the summation deterministic.
    for (int n = 1; n <= cfg.n_modes; ++n) {
        const double lambda = (kPi * n) * (kPi * n);
        const double e = std::exp(-lambda * g.dt);
        const double b = 2.0 / (kPi * n * lambda) * (-std::expm1(-lambda * g.dt));
        const double s = std::sin(kPi * n * x);
        double v = 0.0;
        for (int i = 0; i < m; ++i) {
            v = e * v - b * hp[static_cast<size_t>(i)];
            u[i + 1] += s * v;
        }
    }
    return u;
}

} // namespace detail

SampledFunction solve_forward(const SampledFunction& h, double x, const ProblemConfig& cfg) {
    if (h[0] != 0.0 || h[h.grid.m] != 0.0)
        throw DomainError("solve_forward: h must vanish at both endpoints");
    return detail::series_trace(h, x, cfg);
}

TemperatureField fd_oracle_solve(const SampledFunction& h, int x_points, const ProblemConfig& cfg) {
    cfg.validate();
    check_grid(h, cfg);
    if (x_points < 8)
        throw DomainError("fd_oracle_solve: need at least 8 space intervals, got " +
                          std::to_string(x_points));

    const TimeGrid g = h.grid;
    const int nx = x_points;
    const int ni = nx - 1; // interior unknowns
    const double dx = 1.0 / nx;
    const double lam = g.dt / (2.0 * dx * dx);

    TemperatureField field;
    field.tgrid = g;
    field.xgrid.resize(static_cast<size_t>(nx + 1));
    for (int j = 0; j <= nx; ++j) field.xgrid[static_cast<size_t>(j)] = j * dx;
    field.values = Eigen::MatrixXd::Zero(nx + 1, g.samples());
    for (int k = 0; k <= g.m; ++k) field.values(0, k) = h[k];

    // Crank-Nicolson: (I + lam T) u^{k+1} = (I - lam T) u^k + boundary terms,
    // T the 1D Laplacian stencil. The tridiagonal factorization is constant
    // in time, so the Thomas elimination coefficients are precomputed once.
    const double diag = 1.0 + 2.0 * lam;
    const double off = -lam;
    std::vector<double> cp(static_cast<size_t>(ni)); // modified upper diagonal
    std::vector<double> inv(static_cast<size_t>(ni));
    inv[0] = 1.0 / diag;
    cp[0] = off * inv[0];
    for (int j = 1; j < ni; ++j) {
        inv[static_cast<size_t>(j)] = 1.0 / (diag - off * cp[static_cast<size_t>(j - 1)]);
        cp[static_cast<size_t>(j)] = off * inv[static_cast<size_t>(j)];
    }

    std::vector<double> u(static_cast<size_t>(ni), 0.0);
    std::vector<double> rhs(static_cast<size_t>(ni));
    for (int k = 0; k < g.m; ++k) {
        for (int j = 0; j < ni; ++j) {
            const double left = (j == 0) ? h[k] : u[static_cast<size_t>(j - 1)];
            const double right = (j == ni - 1) ? 0.0 : u[static_cast<size_t>(j + 1)];
            rhs[static_cast<size_t>(j)] =
                (1.0 - 2.0 * lam) * u[static_cast<size_t>(j)] + lam * (left + right);
        }
        rhs[0] += lam * h[k + 1];

        rhs[0] *= inv[0];
        for (int j = 1; j < ni; ++j)
            rhs[static_cast<size_t>(j)] =
                (rhs[static_cast<size_t>(j)] - off * rhs[static_cast<size_t>(j - 1)]) *
                inv[static_cast<size_t>(j)];
        for (int j = ni - 2; j >= 0; --j)
            rhs[static_cast<size_t>(j)] -=
                cp[static_cast<size_t>(j)] * rhs[static_cast<size_t>(j + 1)];

        u = rhs;
        for (int j = 0; j < ni; ++j) field.values(j + 1, k + 1) = u[static_cast<size_t>(j)];
    }
    return field;
}

SampledFunction trace_at(const TemperatureField& field, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("trace_at: x must lie in [0,1], got " + std::to_string(x));
    const int nx = static_cast<int>(field.xgrid.size()) - 1;
    const double pos = x * nx;
    int j = std::min(static_cast<int>(pos), nx - 1);
    const double frac = pos - j;

    SampledFunction out(field.tgrid);
    for (int k = 0; k < field.tgrid.samples(); ++k)
        out[k] = (1.0 - frac) * field.values(j, k) + frac * field.values(j + 1, k);
    return out;
}

} // namespace heatback::forward
