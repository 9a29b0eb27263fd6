#include "heatback/volterra_operator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

#include "heatback/forward_solver.hpp"
#include "parallel.hpp"

namespace heatback::volterra {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr char kMagic[4] = {'H', 'B', 'A', '1'};
constexpr size_t kHeaderBytes = 16;

void check_grid(const OperatorMatrix& A, const SampledFunction& v, const char* who) {
    if (A.grid != v.grid)
        throw DimensionError(std::string(who) + ": grid mismatch");
}

void require_little_endian() {
    if constexpr (std::endian::native != std::endian::little)
        throw IoError("operator cache: only little-endian hosts are supported");
}

} // namespace

double kernel_partial_sum(double t, double tau, double x0, int n_terms) {
    if (n_terms < 1)
        throw DomainError("kernel_partial_sum: n_terms must be >= 1");
    const double gap = t - tau;
    if (!(gap > 0.0))
        throw SingularityError("kernel_partial_sum: series diverges for t <= tau");

    double sum = 0.0;
    for (int n = 1; n <= n_terms; ++n) {
        const double pn = kPi * n;
        const double envelope = pn * std::exp(-pn * pn * gap);
        sum += envelope * std::sin(pn * x0);
        // The envelope decreases once (pi n)^2 > 1/(2 gap); below 1e-14
        // there every remaining term is negligible.
        if (envelope < 1e-14 && pn * pn * gap > 0.5) break;
    }
    return sum;
}

OperatorMatrix assemble_operator(const ProblemConfig& cfg) {
    cfg.validate();
    const TimeGrid g = cfg.grid();
    const int n = g.samples();

    OperatorMatrix out;
    out.grid = g;
    out.x0 = cfg.x0;
    out.quad_weights = trapezoid_weights(g);
    out.a.resize(n, n);

    detail::parallel_for(n, [&](int begin, int end) {
        for (int j = begin; j < end; ++j) {
            SampledFunction hat(g);
            hat[j] = 1.0;
            const SampledFunction col = forward::detail::series_trace(hat, cfg.x0, cfg);
            for (int i = 0; i < n; ++i) out.a(i, j) = col[i];
        }
    });
    return out;
}

SampledFunction apply_operator(const OperatorMatrix& A, const SampledFunction& h) {
    check_grid(A, h, "apply_operator");
    Eigen::Map<const Eigen::VectorXd> x(h.values.data(), h.size());
    Eigen::VectorXd y = A.a * x;
    return SampledFunction(A.grid, std::vector<double>(y.data(), y.data() + y.size()));
}

SampledFunction apply_adjoint(const OperatorMatrix& A, const SampledFunction& g) {
    check_grid(A, g, "apply_adjoint");
    const int n = g.size();
    Eigen::VectorXd weighted(n);
    for (int i = 0; i < n; ++i) weighted[i] = A.quad_weights[static_cast<size_t>(i)] * g[i];
    Eigen::VectorXd y = A.a.transpose() * weighted;
    for (int i = 0; i < n; ++i) y[i] /= A.quad_weights[static_cast<size_t>(i)];
    return SampledFunction(A.grid, std::vector<double>(y.data(), y.data() + y.size()));
}

void save_operator(const OperatorMatrix& A, const std::string& path) {
    require_little_endian();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("save_operator: cannot open " + path);

    char header[kHeaderBytes] = {};
    std::memcpy(header, kMagic, 4);
    const std::uint32_t m = static_cast<std::uint32_t>(A.grid.m);
    std::memcpy(header + 4, &m, 4);
    out.write(header, kHeaderBytes);

    const int n = A.grid.samples();
    std::vector<double> row(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = A.a(i, j);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(sizeof(double) * row.size()));
    }
    if (!out)
        throw IoError("save_operator: write failed for " + path);
}

OperatorMatrix load_operator(const std::string& path, const ProblemConfig& cfg) {
    require_little_endian();
    cfg.validate();
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("load_operator: cannot open " + path);

    char header[kHeaderBytes] = {};
    in.read(header, kHeaderBytes);
    if (!in || std::memcmp(header, kMagic, 4) != 0)
        throw IoError("load_operator: " + path + " is not an HBA1 operator cache");
    std::uint32_t m = 0;
    std::memcpy(&m, header + 4, 4);
    if (static_cast<int>(m) != cfg.m)
        throw IoError("load_operator: cache has m=" + std::to_string(m) +
                      " but configuration wants m=" + std::to_string(cfg.m));

    const TimeGrid g = cfg.grid();
    const int n = g.samples();
    OperatorMatrix out;
    out.grid = g;
    out.x0 = cfg.x0;
    out.quad_weights = trapezoid_weights(g);
    out.a.resize(n, n);

    std::vector<double> row(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(sizeof(double) * row.size()));
        if (!in)
            throw IoError("load_operator: " + path + " is truncated");
        for (int j = 0; j < n; ++j) out.a(i, j) = row[static_cast<size_t>(j)];
    }

    // The header only pins m; recompute one interior column to reject
    // caches written under a different x0, t0, or mode count.
    const int probe = n / 2;
    SampledFunction hat(g);
    hat[probe] = 1.0;
    const SampledFunction col = forward::detail::series_trace(hat, cfg.x0, cfg);
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
        diff = std::max(diff, std::abs(out.a(i, probe) - col[i]));
        scale = std::max(scale, std::abs(col[i]));
    }
    if (diff > 1e-12 * std::max(scale, 1e-300))
        throw IoError("load_operator: " + path + " does not match the configuration");
    return out;
}

} // namespace heatback::volterra
