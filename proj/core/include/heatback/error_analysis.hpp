#pragma once

#include <complex>
#include <string>
#include <vector>

#include "heatback/core_types.hpp"

namespace heatback::analysis {

// Fourier symbol of the measurement map at frequency tau:
//   m(tau) = sh(mu0 (1-x0) sqrt(tau)) / sh(mu0 sqrt(tau)),  mu0 = (1+i)/sqrt(2).
// magnitude always equals |value|; at tau = 0 the limit 1 - x0 is returned.
struct MultiplierPoint {
    double tau = 0.0;
    std::complex<double> value{0.0, 0.0};
    double magnitude = 0.0;
};

// Outcome of scanning the inverse-multiplier growth bound on a tau grid.
struct InverseBoundReport {
    double x0 = 0.0;
    double r2 = 0.0;   // max of 1/|m(tau)| over grid points in [0, 2]
    double tau0 = 0.0; // smallest grid tau >= 2 with exp(x0 sqrt(tau/2)) >= r2
    bool tau0_found = false;
    int violations = 0; // grid points with tau >= 2 where 1/|m| > 8 exp(x0 sqrt(tau/2))
    std::vector<double> violation_taus;
};

struct ErrorBoundReport {
    double delta = 0.0;
    double r1 = 0.0;
    double x0 = 0.0;
    double tau_bar = 0.0;
    double bound = 0.0;          // r1 / sqrt(1 + tau_bar^4)
    bool asymptotic_valid = false;
    double tau0 = 0.0;
    double r2 = 0.0;
    std::string note;
};

// Stable for all tau in [0, 1e8]: small arguments use complex sinh
// directly, large ones a factored form that never overflows.
// Requires tau >= 0 and x0 in (0, 1).
MultiplierPoint spectral_multiplier(double tau, double x0);

// |m(tau)|^2 in extended precision. On a dense log grid the magnitude
// differences near tau = 0 fall below double ulp; strict monotonicity
// checks need the extra bits. Uses sh^2 u + sin^2 u = 2u^2 (1 + g(u))
// with a small-u series for g.
long double multiplier_magnitude_sq(long double tau, long double x0);

// Computes r2 on [0,2], verifies 1/|m| <= 8 exp(x0 sqrt(tau/2)) at every
// grid point with tau >= 2, and locates tau0. Grid must lie in [0, 1e4].
InverseBoundReport inverse_multiplier_bound_check(double x0, const std::vector<double>& tau_grid);

// tau_bar = ln^2(r1/(9 delta)) / (2 x0^2), clamped to 0 when r1 <= 9 delta.
double tau_bar(double delta, double r1, double x0);

// Full a-priori report; the reconstruction guarantee is 2 * bound.
// asymptotic_valid requires tau_bar >= tau0 and tau0^2 <= exp(x0 sqrt(tau0/2)).
ErrorBoundReport error_bound(double delta, double r1, double x0);

// 2000 log-spaced frequencies on [1e-6, 1e4], the default scan grid.
std::vector<double> default_tau_grid();

} // namespace heatback::analysis
