#include "heatback/error_analysis.hpp"

#include <cmath>

namespace heatback::analysis {

namespace {

void check_x0(double x0) {
    if (!(x0 > 0.0 && x0 < 1.0))
        throw DomainError("analysis: x0 must lie in (0,1), got " + std::to_string(x0));
}

// sh^2 u + sin^2 u = 2u^2 (1 + g(u)); series for g from the odd terms of
// (cosh 2u - cos 2u)/2. Below u = 0.25 the first dropped term is ~5e-21
// relative, under long double epsilon, so the series branch is exact there
// and adjacent grid points stay strictly ordered even when they differ by
// less than a double ulp.
long double sinhsq_plus_sinsq(long double u) {
    if (u < 0.25L) {
        const long double u4 = u * u * u * u;
        const long double g = u4 * (2.0L / 45.0L) + u4 * u4 * (1024.0L / 14515200.0L) +
                              u4 * u4 * u4 * (16384.0L / 348713164800.0L);
        return 2.0L * u * u * (1.0L + g);
    }
    const long double sh = std::sinh(u);
    const long double sn = std::sin(u);
    return sh * sh + sn * sn;
}

} // namespace

MultiplierPoint spectral_multiplier(double tau, double x0) {
    check_x0(x0);
    if (!(tau >= 0.0))
        throw DomainError("spectral_multiplier: tau must be >= 0, got " + std::to_string(tau));

    MultiplierPoint out;
    out.tau = tau;
    if (tau == 0.0) {
        out.value = {1.0 - x0, 0.0};
        out.magnitude = 1.0 - x0;
        return out;
    }

    const double s = std::sqrt(tau);
    const double re = s / std::sqrt(2.0); // Re(mu0 sqrt(tau)) = sqrt(tau/2)
    const std::complex<double> mu0(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    const std::complex<double> z = mu0 * s;

    if (re <= 30.0) {
        out.value = std::sinh((1.0 - x0) * z) / std::sinh(z);
    } else {
        // sh(az)/sh(z) = e^{-x0 z} (1 - e^{-2az}) / (1 - e^{-2z}) with
        // a = 1 - x0; every exponent has negative real part, so nothing
        // overflows no matter how large tau gets.
        const std::complex<double> num = 1.0 - std::exp(-2.0 * (1.0 - x0) * z);
        const std::complex<double> den = 1.0 - std::exp(-2.0 * z);
        out.value = std::exp(-x0 * z) * num / den;
    }
    out.magnitude = std::abs(out.value);
    return out;
}

long double multiplier_magnitude_sq(long double tau, long double x0) {
    if (!(x0 > 0.0L && x0 < 1.0L))
        throw DomainError("multiplier_magnitude_sq: x0 must lie in (0,1)");
    if (!(tau >= 0.0L))
        throw DomainError("multiplier_magnitude_sq: tau must be >= 0");
    const long double a = 1.0L - x0;
    if (tau == 0.0L) return a * a;
    // |sh((1+i)u/ sqrt 2 ... )|: with z = mu0 sqrt(tau), Re z = Im z = u,
    // |sh(z)|^2 = sh^2 u + sin^2 u at u = sqrt(tau/2).
    const long double u = std::sqrt(tau / 2.0L);
    return sinhsq_plus_sinsq(a * u) / sinhsq_plus_sinsq(u);
}

InverseBoundReport inverse_multiplier_bound_check(double x0,
                                                  const std::vector<double>& tau_grid) {
    check_x0(x0);
    InverseBoundReport rep;
    rep.x0 = x0;
    rep.r2 = 1.0 / (1.0 - x0); // tau -> 0 limit of 1/|m|, the scan seed

    for (double tau : tau_grid) {
        if (!(tau >= 0.0 && tau <= 1e4))
            throw DomainError("inverse_multiplier_bound_check: grid must lie in [0, 1e4]");
        const double mag = spectral_multiplier(tau, x0).magnitude;
        const double ratio = 1.0 / mag;
        if (tau <= 2.0 && ratio > rep.r2) rep.r2 = ratio;
    }
    for (double tau : tau_grid) {
        if (tau < 2.0) continue;
        const double mag = spectral_multiplier(tau, x0).magnitude;
        const double growth = std::exp(x0 * std::sqrt(tau / 2.0));
        if (1.0 / mag > 8.0 * growth) {
            ++rep.violations;
            rep.violation_taus.push_back(tau);
        }
        // Smallest qualifying grid point, independent of grid ordering.
        if (growth >= rep.r2 && (!rep.tau0_found || tau < rep.tau0)) {
            rep.tau0 = tau;
            rep.tau0_found = true;
        }
    }
    return rep;
}

double tau_bar(double delta, double r1, double x0) {
    if (!(delta > 0.0))
        throw DomainError("tau_bar: delta must be positive, got " + std::to_string(delta));
    if (!(r1 > 0.0))
        throw DomainError("tau_bar: r1 must be positive, got " + std::to_string(r1));
    check_x0(x0);
    if (r1 <= 9.0 * delta) return 0.0;
    const double l = std::log(r1 / (9.0 * delta));
    return l * l / (2.0 * x0 * x0);
}

ErrorBoundReport error_bound(double delta, double r1, double x0) {
    ErrorBoundReport rep;
    rep.delta = delta;
    rep.r1 = r1;
    rep.x0 = x0;
    rep.tau_bar = tau_bar(delta, r1, x0); // validates all three arguments

    const double tb = rep.tau_bar;
    // tau_bar^4 overflows for tau_bar > ~1e77; divide through instead.
    if (tb > 1e60) {
        rep.bound = r1 / (tb * tb) / std::sqrt(1.0 / (tb * tb * tb * tb) + 1.0);
    } else {
        rep.bound = r1 / std::sqrt(1.0 + tb * tb * tb * tb);
    }

    const InverseBoundReport inv = inverse_multiplier_bound_check(x0, default_tau_grid());
    rep.tau0 = inv.tau0;
    rep.r2 = inv.r2;
    rep.asymptotic_valid = inv.tau0_found && rep.tau_bar >= inv.tau0 &&
                           inv.tau0 * inv.tau0 <= std::exp(x0 * std::sqrt(inv.tau0 / 2.0));
    rep.note =
        "bound = r1/sqrt(1+tau_bar^4) with tau_bar = ln^2(r1/(9 delta))/(2 x0^2); "
        "tau_bar^4 expands to ln^8(r1/(9 delta))/(16 x0^8), so a display quoting "
        "1/(16 x0^2) ln^8 under the root is inconsistent with this chain and is not used";
    return rep;
}

std::vector<double> default_tau_grid() {
    const int n = 2000;
    std::vector<double> grid(n);
    const double lo = -6.0, hi = 4.0;
    for (int k = 0; k < n; ++k)
        grid[static_cast<size_t>(k)] = std::pow(10.0, lo + (hi - lo) * k / (n - 1));
    return grid;
}

} // namespace heatback::analysis
