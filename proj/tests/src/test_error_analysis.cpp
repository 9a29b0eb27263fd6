#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "heatback/error_analysis.hpp"
#include "heatback/errors.hpp"

using namespace heatback;
using analysis::default_tau_grid;
using analysis::error_bound;
using analysis::inverse_multiplier_bound_check;
using analysis::multiplier_magnitude_sq;
using analysis::spectral_multiplier;
using analysis::tau_bar;

namespace {

// Series evaluation of sinh in extended precision, independent of libm.
std::complex<long double> sinh_series(std::complex<long double> z) {
    std::complex<long double> term = z;
    std::complex<long double> sum = z;
    const std::complex<long double> z2 = z * z;
    for (int k = 1; k <= 60; ++k) {
        term *= z2 / static_cast<long double>((2 * k) * (2 * k + 1));
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_SUITE("error_analysis") {

TEST_CASE("multiplier at zero frequency is the steady-state factor") {
    for (double x0 : {0.1, 0.5, 0.9}) {
        const auto p = spectral_multiplier(0.0, x0);
        CHECK(p.value.real() == 1.0 - x0);
        CHECK(p.value.imag() == 0.0);
        CHECK(p.magnitude == 1.0 - x0);
    }
}

TEST_CASE("multiplier argument validation") {
    CHECK_THROWS_AS(spectral_multiplier(-1.0, 0.5), DomainError);
    CHECK_THROWS_AS(spectral_multiplier(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(spectral_multiplier(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(spectral_multiplier(1.0, -0.3), DomainError);
    CHECK_THROWS_AS(multiplier_magnitude_sq(-1.0L, 0.5L), DomainError);
    CHECK_THROWS_AS(multiplier_magnitude_sq(1.0L, 1.5L), DomainError);
}

TEST_CASE("multiplier matches an extended-precision series oracle") {
    const long double tau = 4.0L;
    const long double x0 = 0.3L;
    const std::complex<long double> mu0(1.0L / std::sqrt(2.0L), 1.0L / std::sqrt(2.0L));
    const std::complex<long double> z = mu0 * std::sqrt(tau);
    const std::complex<long double> ref = sinh_series((1.0L - x0) * z) / sinh_series(z);

    const auto p = spectral_multiplier(4.0, 0.3);
    CHECK(std::abs(p.value.real() - static_cast<double>(ref.real())) <= 1e-12);
    CHECK(std::abs(p.value.imag() - static_cast<double>(ref.imag())) <= 1e-12);
    CHECK(p.magnitude == doctest::Approx(std::abs(p.value)).epsilon(1e-15));
    // Frozen reference: m(4, 0.3) = 0.624224353598455 - 0.208235474851419 i.
    CHECK(p.value.real() == doctest::Approx(0.6242243535984550).epsilon(1e-13));
    CHECK(p.value.imag() == doctest::Approx(-0.2082354748514192).epsilon(1e-13));
}

TEST_CASE("extended-precision magnitude agrees with the complex evaluation") {
    for (double tau : {1e-4, 0.1, 1.0, 10.0, 300.0, 1795.0, 1805.0}) {
        const double direct = spectral_multiplier(tau, 0.4).magnitude;
        const double viasq = std::sqrt(static_cast<double>(multiplier_magnitude_sq(tau, 0.4L)));
        CHECK(direct == doctest::Approx(viasq).epsilon(1e-10));
    }
}

TEST_CASE("magnitude decays like the exponential envelope at high frequency") {
    for (double tau : {50.0, 200.0, 1e3, 1e4, 1e6}) {
        const double mag = spectral_multiplier(tau, 0.5).magnitude;
        const double envelope = std::exp(-0.5 * std::sqrt(tau / 2.0));
        CHECK(mag / envelope > 0.5);
        CHECK(mag / envelope < 2.0);
    }
}

TEST_CASE("magnitude stays finite and monotone across the full range") {
    // Beyond tau ~ 4e6 the value sits under exp(-x0 * sqrt(tau / 2)), which
    // falls below the smallest subnormal double; exact zero is the correct
    // rounding there, so positivity is only required up to 1e6.
    double prev = 1.0;
    for (double tau : {0.0, 1e-6, 1e-2, 1.0, 1e2, 1e4, 1e6, 1e8}) {
        const auto p = spectral_multiplier(tau, 0.5);
        CHECK(std::isfinite(p.magnitude));
        if (tau <= 1e6) CHECK(p.magnitude > 0.0);
        CHECK(p.magnitude >= 0.0);
        CHECK(p.magnitude <= prev);
        prev = p.magnitude;
    }
}

TEST_CASE("magnitude is strictly decreasing on the default grid") {
    // Near tau = 0 adjacent grid magnitudes differ by less than a double
    // ulp; the extended-precision path must still order them strictly.
    const auto grid = default_tau_grid();
    REQUIRE(grid.size() == 2000);
    CHECK(grid.front() == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(1e4).epsilon(1e-12));

    for (double x0 : {0.3, 0.5, 0.8}) {
        long double prev = multiplier_magnitude_sq(0.0L, x0);
        int failures = 0;
        for (double tau : grid) {
            const long double cur = multiplier_magnitude_sq(tau, x0);
            if (!(cur < prev)) ++failures;
            prev = cur;
        }
        CAPTURE(x0);
        CHECK(failures == 0);
    }
}

TEST_CASE("magnitude decreases as the sensor moves away from the boundary") {
    const double m1 = spectral_multiplier(10.0, 0.2).magnitude;
    const double m2 = spectral_multiplier(10.0, 0.5).magnitude;
    const double m3 = spectral_multiplier(10.0, 0.8).magnitude;
    CHECK(m1 > m2);
    CHECK(m2 > m3);
}

TEST_CASE("inverse bound scan: growth envelope holds on the default grid") {
    const auto grid = default_tau_grid();
    for (double x0 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto rep = inverse_multiplier_bound_check(x0, grid);
        CAPTURE(x0);
        CHECK(rep.violations == 0);
        CHECK(rep.violation_taus.empty());
        CHECK(rep.r2 >= 1.0 / (1.0 - x0));
        CHECK(rep.tau0_found);
        CHECK(rep.tau0 >= 2.0);
        CHECK(std::exp(x0 * std::sqrt(rep.tau0 / 2.0)) >= rep.r2);
    }
}

TEST_CASE("inverse bound scan: tau0 is the smallest qualifying grid point") {
    const auto grid = default_tau_grid();
    const auto rep = inverse_multiplier_bound_check(0.5, grid);
    REQUIRE(rep.tau0_found);
    // Frozen from the grid geometry: first point past 4.10 where the
    // exponential growth overtakes r2 ~ 2.0407.
    CHECK(rep.tau0 == doctest::Approx(4.104938484899886).epsilon(1e-10));
    CHECK(rep.r2 == doctest::Approx(2.040727002326228).epsilon(1e-10));

    double predecessor = -1.0;
    for (double tau : grid)
        if (tau >= 2.0 && tau < rep.tau0) predecessor = std::max(predecessor, tau);
    REQUIRE(predecessor > 0.0);
    CHECK(std::exp(0.5 * std::sqrt(predecessor / 2.0)) < rep.r2);
}

TEST_CASE("inverse bound scan input validation") {
    CHECK_THROWS_AS(inverse_multiplier_bound_check(0.5, {1.0, 2e4}), DomainError);
    CHECK_THROWS_AS(inverse_multiplier_bound_check(0.5, {-1.0}), DomainError);
    CHECK_THROWS_AS(inverse_multiplier_bound_check(1.2, {1.0}), DomainError);
}

TEST_CASE("tau_bar formula and clamping") {
    CHECK(tau_bar(1e-4, 1.0, 0.5) == doctest::Approx(98.36758629805705).epsilon(1e-12));
    CHECK(tau_bar(1.0, 9.0, 0.5) == 0.0);
    CHECK(tau_bar(1.0, 1.0, 0.5) == 0.0);

    double prev = tau_bar(1e-2, 1.0, 0.5);
    for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double cur = tau_bar(delta, 1.0, 0.5);
        CHECK(cur > prev);
        prev = cur;
    }

    CHECK_THROWS_AS(tau_bar(0.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(tau_bar(1e-3, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(tau_bar(1e-3, 1.0, 0.0), DomainError);
}

TEST_CASE("error bound report: value, monotonicity, and degenerate cases") {
    const auto rep = error_bound(1e-4, 1.0, 0.5);
    CHECK(rep.tau_bar == doctest::Approx(98.36758629805705).epsilon(1e-12));
    CHECK(rep.bound == doctest::Approx(1.033465463066982e-4).epsilon(1e-12));
    CHECK(rep.tau0 > 2.0);
    CHECK(rep.r2 >= 2.0);
    CHECK(!rep.note.empty());

    SUBCASE("noise at the smoothness scale gives the trivial bound") {
        const auto flat = error_bound(1.0, 1.0, 0.5);
        CHECK(flat.tau_bar == 0.0);
        CHECK(flat.bound == 1.0);
    }

    SUBCASE("shrinking the noise strictly shrinks the bound") {
        double prev = error_bound(1e-3, 1.0, 0.5).bound;
        for (double delta : {1e-4, 1e-5, 1e-6, 1e-8}) {
            const double cur = error_bound(delta, 1.0, 0.5).bound;
            CHECK(cur < prev);
            prev = cur;
        }
    }

    SUBCASE("bound approaches the logarithmic asymptote") {
        for (double delta : {1e-8, 1e-10, 1e-12}) {
            const auto r = error_bound(delta, 1.0, 0.5);
            const double l = std::log(1.0 / (9.0 * delta));
            const double asymptote = 4.0 * std::pow(0.5, 4) / std::pow(l, 4);
            CHECK(r.bound == doctest::Approx(asymptote).epsilon(0.05));
        }
    }

    SUBCASE("bound arguments are validated") {
        CHECK_THROWS_AS(error_bound(0.0, 1.0, 0.5), DomainError);
        CHECK_THROWS_AS(error_bound(1e-3, -1.0, 0.5), DomainError);
        CHECK_THROWS_AS(error_bound(1e-3, 1.0, 1.0), DomainError);
    }
}

TEST_CASE("asymptotic premise is tracked honestly") {
    // On the default grid tau0^2 ~ 16.9 while the growth factor at tau0 is
    // only ~2.05, so the premise of the asymptotic regime never holds at
    // these scales. The report must say so rather than claiming validity.
    for (double delta : {1e-2, 1e-4, 1e-8, 1e-12}) {
        CHECK(!error_bound(delta, 1.0, 0.5).asymptotic_valid);
    }
}

TEST_CASE("bound survives extreme noise ratios without overflow") {
    const auto rep = error_bound(1e-300, 1.0, 0.5);
    CHECK(std::isfinite(rep.tau_bar));
    CHECK(std::isfinite(rep.bound));
    CHECK(rep.bound > 0.0);
    CHECK(rep.bound < 1e-9);
}

}  // TEST_SUITE
