#pragma once

#include <vector>

#include <Eigen/Dense>

#include "heatback/core_types.hpp"
#include "heatback/volterra_operator.hpp"

namespace heatback::tikhonov {

// Discrete stabilizer P = W + D2^T W2 D2 realizing ||h||^2 + ||h''||^2:
// W is the trapezoid weight matrix on all nodes, D2 the second central
// difference onto interior nodes, W2 the trapezoid weights on [t_1, t_{m-1}].
// Symmetric positive semidefinite; in fact P >= W > 0.
struct PenaltyMatrix {
    Eigen::MatrixXd p;
    TimeGrid grid;
};

// One logged evaluation of the residual curve during parameter selection.
struct AlphaEvaluation {
    double alpha = 0.0;
    double residual = 0.0;
    double solution_norm = 0.0; // weighted L2 norm of h_alpha
};

struct RegularizedSolution {
    SampledFunction h;
    double alpha = 0.0;
    double residual = 0.0; // ||A h - f_delta|| at the returned alpha
    int bisection_steps = 0;
    bool converged = false;
    std::vector<AlphaEvaluation> trace; // every residual evaluation, in call order
};

// Requires grid.m >= 4 (the second difference needs interior room).
PenaltyMatrix assemble_penalty(const TimeGrid& grid);

// Workspace for repeated solves against one operator: caches the penalty,
// the weighted normal matrix A^T W A, and the boundary-eliminated blocks.
// All methods are const and safe to call from multiple threads.
class TikhonovSolver {
public:
    explicit TikhonovSolver(volterra::OperatorMatrix A);

    const volterra::OperatorMatrix& op() const { return a_; }
    const PenaltyMatrix& penalty() const { return p_; }

    // Minimizer of ||A h - f_delta||^2 + alpha h^T P h over h with
    // h(0) = h(t0) = 0 (first and last unknowns eliminated). SPD solve via
    // Cholesky with an LDLT fallback; alpha must be positive.
    SampledFunction solve(const SampledFunction& f_delta, double alpha) const;

    // ||A h_alpha - f_delta|| for the minimizer at this alpha.
    double residual_at(const SampledFunction& f_delta, double alpha) const;

    // Morozov principle: find alpha with |residual - delta| <= 1e-3 delta
    // by bisection on log10(alpha), growing the initial bracket
    // [1e-14, 1e2] geometrically (up to 60 steps per side) until the
    // residual straddles delta. Requires ||f_delta|| > delta
    // (NoiseDominatesError otherwise) and delta > 0.
    RegularizedSolution select_alpha(const SampledFunction& f_delta, double delta) const;

private:
    Eigen::VectorXd reduced_rhs(const SampledFunction& f_delta) const;
    Eigen::VectorXd reduced_solve(const Eigen::VectorXd& rhs, double alpha) const;
    SampledFunction embed(const Eigen::VectorXd& z) const;
    double residual_of(const SampledFunction& h, const SampledFunction& f_delta) const;

    volterra::OperatorMatrix a_;
    PenaltyMatrix p_;
    Eigen::MatrixXd gred_; // (A^T W A) restricted to interior unknowns
    Eigen::MatrixXd pred_; // P restricted to interior unknowns
};

// Single-shot wrappers matching the workspace methods. Each call builds
// the normal matrix afresh; prefer TikhonovSolver when alpha varies.
SampledFunction solve_regularized(const volterra::OperatorMatrix& A,
                                  const SampledFunction& f_delta, double alpha);
double residual_at(const volterra::OperatorMatrix& A,
                   const SampledFunction& f_delta, double alpha);
RegularizedSolution select_alpha_discrepancy(const volterra::OperatorMatrix& A,
                                             const SampledFunction& f_delta, double delta);

} // namespace heatback::tikhonov
