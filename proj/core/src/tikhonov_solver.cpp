#include "heatback/tikhonov_solver.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace heatback::tikhonov {

namespace {

constexpr double kResidualRtol = 1e-3;
constexpr double kBracketLo = 1e-14;
constexpr double kBracketHi = 1e2;
constexpr int kMaxGrowth = 60;   // per bracket side
constexpr int kMaxBisection = 200;

} // namespace

PenaltyMatrix assemble_penalty(const TimeGrid& grid) {
    const int m = grid.m;
    if (m < 4)
        throw DomainError("assemble_penalty: second difference needs m >= 4, got " +
                          std::to_string(m));
    const int n = grid.samples();
    const double dt = grid.dt;

    // B = W2^{1/2} D2 row by row; P = W + B^T B built via a symmetric rank
    // update so the result is exactly symmetric.
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m - 1, n);
    const double inv = 1.0 / (dt * dt);
    for (int r = 0; r < m - 1; ++r) {
        const int i = r + 1; // interior node index
        const double w2 = (i == 1 || i == m - 1) ? 0.5 * dt : dt;
        const double s = std::sqrt(w2) * inv;
        b(r, i - 1) = s;
        b(r, i) = -2.0 * s;
        b(r, i + 1) = s;
    }

    PenaltyMatrix out;
    out.grid = grid;
    out.p = Eigen::MatrixXd::Zero(n, n);
    out.p.selfadjointView<Eigen::Lower>().rankUpdate(b.transpose());
    out.p.triangularView<Eigen::StrictlyUpper>() = out.p.transpose();
    const std::vector<double> w = trapezoid_weights(grid);
    for (int i = 0; i < n; ++i) out.p(i, i) += w[static_cast<size_t>(i)];
    return out;
}

TikhonovSolver::TikhonovSolver(volterra::OperatorMatrix A)
    : a_(std::move(A)), p_(assemble_penalty(a_.grid)) {
    const int n = a_.grid.samples();
    const int ni = n - 2;

    // G = A^T W A through a rank update on W^{1/2} A: half the flops of a
    // general product and exactly symmetric.
    Eigen::MatrixXd wa = a_.a;
    for (int i = 0; i < n; ++i)
        wa.row(i) *= std::sqrt(a_.quad_weights[static_cast<size_t>(i)]);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g.selfadjointView<Eigen::Lower>().rankUpdate(wa.transpose());
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();

    gred_ = g.block(1, 1, ni, ni);
    pred_ = p_.p.block(1, 1, ni, ni);
}

Eigen::VectorXd TikhonovSolver::reduced_rhs(const SampledFunction& f_delta) const {
    const int n = a_.grid.samples();
    Eigen::VectorXd wf(n);
    for (int i = 0; i < n; ++i) wf[i] = a_.quad_weights[static_cast<size_t>(i)] * f_delta[i];
    Eigen::VectorXd full = a_.a.transpose() * wf;
    return full.segment(1, n - 2);
}

Eigen::VectorXd TikhonovSolver::reduced_solve(const Eigen::VectorXd& rhs, double alpha) const {
    Eigen::MatrixXd m = gred_ + alpha * pred_;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    if (ldlt.info() == Eigen::Success) return ldlt.solve(rhs);
    throw SingularityError("tikhonov: normal-equation factorization failed at alpha = " +
                           std::to_string(alpha));
}

SampledFunction TikhonovSolver::embed(const Eigen::VectorXd& z) const {
    SampledFunction h(a_.grid);
    for (int i = 0; i < z.size(); ++i) h[i + 1] = z[i];
    return h;
}

double TikhonovSolver::residual_of(const SampledFunction& h, const SampledFunction& f_delta) const {
    Eigen::Map<const Eigen::VectorXd> x(h.values.data(), h.size());
    Eigen::VectorXd r = a_.a * x;
    double s = 0.0;
    for (int i = 0; i < h.size(); ++i) {
        const double d = r[i] - f_delta[i];
        s += a_.quad_weights[static_cast<size_t>(i)] * d * d;
    }
    return std::sqrt(s);
}

SampledFunction TikhonovSolver::solve(const SampledFunction& f_delta, double alpha) const {
    if (!(alpha > 0.0))
        throw DomainError("tikhonov: alpha must be positive, got " + std::to_string(alpha));
    if (f_delta.grid != a_.grid)
        throw DimensionError("tikhonov: data grid does not match operator grid");
    return embed(reduced_solve(reduced_rhs(f_delta), alpha));
}

double TikhonovSolver::residual_at(const SampledFunction& f_delta, double alpha) const {
    return residual_of(solve(f_delta, alpha), f_delta);
}

RegularizedSolution TikhonovSolver::select_alpha(const SampledFunction& f_delta,
                                                 double delta) const {
    if (!(delta > 0.0))
        throw DomainError("select_alpha: delta must be positive, got " + std::to_string(delta));
    if (f_delta.grid != a_.grid)
        throw DimensionError("select_alpha: data grid does not match operator grid");
    if (!(l2_norm(f_delta) > delta))
        throw NoiseDominatesError(
            "select_alpha: the residual principle needs ||f_delta|| > delta; "
            "the noise level dominates the data");

    RegularizedSolution out;
    const Eigen::VectorXd rhs = reduced_rhs(f_delta);

    auto evaluate = [&](double alpha) {
        SampledFunction h = embed(reduced_solve(rhs, alpha));
        const double r = residual_of(h, f_delta);
        out.trace.push_back({alpha, r, l2_norm(h)});
        return std::make_pair(r, std::move(h));
    };

    double lo = kBracketLo, hi = kBracketHi;
    auto [rlo, hlo] = evaluate(lo);
    // Residual is nondecreasing in alpha: shrink lo until it undershoots
    // delta, grow hi until it overshoots.
    int growth = 0;
    while (rlo > delta && growth < kMaxGrowth) {
        lo *= 0.5;
        std::tie(rlo, hlo) = evaluate(lo);
        ++growth;
    }
    if (rlo > delta)
        throw BracketingError("select_alpha: residual floor stays above delta after " +
                              std::to_string(kMaxGrowth) + " bracket halvings");
    auto [rhi, hhi] = evaluate(hi);
    growth = 0;
    while (rhi < delta && growth < kMaxGrowth) {
        hi *= 2.0;
        std::tie(rhi, hhi) = evaluate(hi);
        ++growth;
    }
    if (rhi < delta)
        throw BracketingError("select_alpha: residual stays below delta after " +
                              std::to_string(kMaxGrowth) + " bracket doublings");

    // Either bracket edge may already satisfy the stopping rule.
    if (std::abs(rlo - delta) <= kResidualRtol * delta) {
        out.h = std::move(hlo);
        out.alpha = lo;
        out.residual = rlo;
        out.converged = true;
        return out;
    }
    if (std::abs(rhi - delta) <= kResidualRtol * delta) {
        out.h = std::move(hhi);
        out.alpha = hi;
        out.residual = rhi;
        out.converged = true;
        return out;
    }

    double ulo = std::log10(lo), uhi = std::log10(hi);
    for (int step = 0; step < kMaxBisection; ++step) {
        const double alpha = std::pow(10.0, 0.5 * (ulo + uhi));
        auto [r, h] = evaluate(alpha);
        ++out.bisection_steps;
        if (std::abs(r - delta) <= kResidualRtol * delta) {
            out.h = std::move(h);
            out.alpha = alpha;
            out.residual = r;
            out.converged = true;
            return out;
        }
        if (r > delta)
            uhi = std::log10(alpha);
        else
            ulo = std::log10(alpha);
        // Track the closest evaluation in case the interval collapses.
        if (out.alpha == 0.0 || std::abs(r - delta) < std::abs(out.residual - delta)) {
            out.h = std::move(h);
            out.alpha = alpha;
            out.residual = r;
        }
        if (uhi - ulo < 1e-15) break;
    }
    out.converged = false;
    return out;
}

SampledFunction solve_regularized(const volterra::OperatorMatrix& A,
                                  const SampledFunction& f_delta, double alpha) {
    return TikhonovSolver(A).solve(f_delta, alpha);
}

double residual_at(const volterra::OperatorMatrix& A, const SampledFunction& f_delta,
                   double alpha) {
    return TikhonovSolver(A).residual_at(f_delta, alpha);
}

RegularizedSolution select_alpha_discrepancy(const volterra::OperatorMatrix& A,
                                             const SampledFunction& f_delta, double delta) {
    return TikhonovSolver(A).select_alpha(f_delta, delta);
}

} // namespace heatback::tikhonov
