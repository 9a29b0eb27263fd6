#pragma once

#include <string>

#include <Eigen/Dense>

#include "heatback/core_types.hpp"

namespace heatback::volterra {

// Dense discretization of the causal measurement map h |-> u(x0, .).
// Column j is the sensor trace of the piecewise-linear hat at node j, so
// applying the matrix reproduces the forward solver exactly for any
// sampled h (superposition). Strictly causal: entries above the diagonal
// are exact zeros.
struct OperatorMatrix {
    Eigen::MatrixXd a;
    TimeGrid grid;
    double x0 = 0.5;
    std::vector<double> quad_weights; // trapezoid weights of grid
};

// Partial sum of the (singular) kernel series
//   K(t,tau) = sum_n pi n exp(-(pi n)^2 (t-tau)) sin(pi n x0),
// for diagnostics and plots; assembly never integrates this directly.
// Stops early once the term envelope drops below 1e-14 in its decreasing
// regime. Requires t > tau (SingularityError otherwise) and n_terms >= 1.
double kernel_partial_sum(double t, double tau, double x0, int n_terms);

// Builds the (m+1)^2 matrix; columns are independent forward solves and
// run in parallel (capped by HEATBACK_THREADS).
OperatorMatrix assemble_operator(const ProblemConfig& cfg);

// Matrix-vector product f = A h. Grids must match.
SampledFunction apply_operator(const OperatorMatrix& A, const SampledFunction& h);

// Adjoint with respect to the trapezoid-weighted inner product,
// A* = W^{-1} A^T W, so <A h, g> = <h, A* g> holds to roundoff.
SampledFunction apply_adjoint(const OperatorMatrix& A, const SampledFunction& g);

// Binary cache of an assembled matrix. Layout: 4-byte magic "HBA1",
// little-endian u32 m, 8 reserved zero bytes, then (m+1)^2 row-major
// float64 entries. Loading revalidates against cfg: the header m must
// match, and one column is recomputed and compared, so a cache written
// under different x0/t0/n_modes fails loudly instead of reconstructing
// garbage.
void save_operator(const OperatorMatrix& A, const std::string& path);
OperatorMatrix load_operator(const std::string& path, const ProblemConfig& cfg);

} // namespace heatback::volterra
