#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "heatback/errors.hpp"
#include "heatback/experiment.hpp"
#include "heatback/forward_solver.hpp"
#include "heatback/volterra_operator.hpp"

using namespace heatback;
using namespace heatback::experiment;

namespace {

ProblemConfig config_for(int m) {
    ProblemConfig cfg;
    cfg.m = m;
    cfg.n_modes = forward::default_mode_count(TimeGrid(cfg.t0, m));
    return cfg;
}

const Instance& shared_instance() {
    static const Instance inst =
        make_instance(config_for(300), {ProfileKind::poly_bump, 1.0});
    return inst;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string field_at(const std::string& line, int index) {
    size_t start = 0;
    for (int k = 0; k < index; ++k) start = line.find(',', start) + 1;
    const size_t end = line.find(',', start);
    return line.substr(start, end == std::string::npos ? end : end - start);
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("profile names round trip") {
    for (auto kind : {ProfileKind::poly_bump, ProfileKind::sine_bump, ProfileKind::double_bump}) {
        CHECK(profile_from_string(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(profile_from_string("triangle"), DomainError);
}

TEST_CASE("generated truths are admissible boundary histories") {
    // m chosen so m * dt != t0 exactly; the endpoints must still be clean.
    const ProblemConfig cfg = config_for(377);
    for (auto kind : {ProfileKind::poly_bump, ProfileKind::sine_bump, ProfileKind::double_bump}) {
        const auto h = generate_truth({kind, 1.0}, cfg);
        CAPTURE(to_string(kind));
        CHECK(h[0] == 0.0);
        CHECK(h[cfg.m] == 0.0);
        CHECK(l2_norm(h) > 0.0);
        CHECK_NOTHROW(forward::solve_forward(h, cfg.x0, cfg));
    }
}

TEST_CASE("generated truths start and stop flat") {
    const ProblemConfig cfg = config_for(2000);
    const double dt = cfg.grid().dt;

    SUBCASE("smooth bumps: one-sided second-order quotients are O(dt^2)") {
        for (auto kind : {ProfileKind::poly_bump, ProfileKind::sine_bump}) {
            const auto h = generate_truth({kind, 1.0}, cfg);
            const int m = cfg.m;
            const double q0 = (-3.0 * h[0] + 4.0 * h[1] - h[2]) / (2.0 * dt);
            const double qm = (3.0 * h[m] - 4.0 * h[m - 1] + h[m - 2]) / (2.0 * dt);
            CAPTURE(to_string(kind));
            CHECK(std::abs(q0) <= 1e-5);
            CHECK(std::abs(qm) <= 1e-5);
        }
    }

    SUBCASE("compactly supported bump: the quotients vanish identically") {
        const auto h = generate_truth({ProfileKind::double_bump, 1.0}, cfg);
        const int m = cfg.m;
        CHECK((-3.0 * h[0] + 4.0 * h[1] - h[2]) == 0.0);
        CHECK((3.0 * h[m] - 4.0 * h[m - 1] + h[m - 2]) == 0.0);
    }
}

TEST_CASE("truth scaling hits the requested smoothness norm") {
    const ProblemConfig base = config_for(2000);

    SUBCASE("full radius") {
        for (auto kind :
             {ProfileKind::poly_bump, ProfileKind::sine_bump, ProfileKind::double_bump}) {
            const auto h = generate_truth({kind, 1.0}, base);
            const auto [l2sq, h2sq] = h2_seminorm_pair(h);
            CAPTURE(to_string(kind));
            CHECK(l2sq + h2sq == doctest::Approx(1.0).epsilon(1e-6));
        }
    }

    SUBCASE("fractional radius with a different r1") {
        ProblemConfig cfg = base;
        cfg.r1 = 2.5;
        const auto h = generate_truth({ProfileKind::poly_bump, 0.5}, cfg);
        const auto [l2sq, h2sq] = h2_seminorm_pair(h);
        CHECK(l2sq + h2sq == doctest::Approx(0.5 * 0.5 * 2.5 * 2.5).epsilon(1e-6));
    }

    SUBCASE("discrete norm split matches the closed-form integrals") {
        // For t^2 (1-t)^2: ||h||^2 = 1/630 and ||h''||^2 = 4/5.
        const auto h = generate_truth({ProfileKind::poly_bump, 1.0}, base);
        const auto [l2sq, h2sq] = h2_seminorm_pair(h);
        const double want = (1.0 / 630.0) / (1.0 / 630.0 + 0.8);
        CHECK(l2sq / (l2sq + h2sq) == doctest::Approx(want).epsilon(0.01));
    }

    SUBCASE("fraction outside (0, 1] is rejected") {
        CHECK_THROWS_AS(generate_truth({ProfileKind::poly_bump, 0.0}, base), DomainError);
        CHECK_THROWS_AS(generate_truth({ProfileKind::poly_bump, -0.2}, base), DomainError);
        CHECK_THROWS_AS(generate_truth({ProfileKind::poly_bump, 1.5}, base), DomainError);
    }
}

TEST_CASE("add_noise produces a perturbation of exact size") {
    const ProblemConfig cfg = config_for(200);
    const auto f = generate_truth({ProfileKind::poly_bump, 1.0}, cfg);

    SUBCASE("requested distance is met to roundoff") {
        for (double delta : {1e-2, 1e-5, 1e-9}) {
            const auto g = add_noise(f, delta, 42);
            CHECK(l2_distance(f, g) == doctest::Approx(delta).epsilon(1e-12));
        }
    }

    SUBCASE("zero noise is the identity") {
        const auto g = add_noise(f, 0.0, 42);
        for (int i = 0; i < f.size(); ++i) CHECK(g[i] == f[i]);
    }

    SUBCASE("seeds are reproducible and distinct") {
        const auto a = add_noise(f, 1e-3, 7);
        const auto b = add_noise(f, 1e-3, 7);
        const auto c = add_noise(f, 1e-3, 8);
        for (int i = 0; i < f.size(); ++i) CHECK(a[i] == b[i]);
        CHECK(l2_distance(a, c) > 0.0);
    }

    SUBCASE("negative noise level is rejected") {
        CHECK_THROWS_AS(add_noise(f, -1e-3, 1), DomainError);
    }
}

TEST_CASE("synthetic data is consistent but not operator-committed") {
    const auto& inst = shared_instance();
    const double fnorm = l2_norm(inst.f0);
    REQUIRE(fnorm > 0.0);

    SUBCASE("instance bookkeeping") {
        const auto [l2sq, h2sq] = h2_seminorm_pair(inst.h0);
        CHECK(inst.r1_true == doctest::Approx(std::sqrt(l2sq + h2sq)).epsilon(1e-12));
        CHECK(inst.r1_true == doctest::Approx(inst.config.r1).epsilon(1e-6));
        CHECK(inst.solver.op().grid == inst.config.grid());
    }

    SUBCASE("refined-grid data stays near the discrete operator image") {
        const auto committed = volterra::apply_operator(inst.solver.op(), inst.h0);
        const double gap = l2_distance(inst.f0, committed);
        CHECK(gap > 0.0);
        CHECK(gap <= 1e-3 * fnorm);
    }

    SUBCASE("finite difference data agrees with the series data") {
        const auto fd = synthesize_data(inst.profile, inst.config, {true, 400});
        const auto series = synthesize_data(inst.profile, inst.config, {});
        CHECK(fd.scale == series.scale);
        CHECK(l2_distance(fd.f0, inst.f0) <= 1e-3 * fnorm);
        for (int i = 0; i <= inst.config.m; ++i) CHECK(fd.h0[i] == inst.h0[i]);
    }
}

TEST_CASE("single runs recover the truth and honor the stopping rule") {
    const auto& inst = shared_instance();
    const double fnorm = l2_norm(inst.f0);
    const double delta = 1e-2 * fnorm;

    const auto rec = run_on(inst, delta, 5);
    CHECK(rec.delta == delta);
    CHECK(rec.seed == 5);
    CHECK(rec.alpha > 0.0);
    CHECK(std::abs(rec.residual - delta) <= 1e-3 * delta);
    CHECK(rec.measured_error > 0.0);
    CHECK(rec.measured_error < l2_norm(inst.h0));
    CHECK(rec.wall_time_seconds >= 0.0);
    CHECK(rec.bound_two_omega == 2.0 * rec.bound_report.bound);
    CHECK(rec.bound_report.delta == delta);
    CHECK(rec.bound_report.r1 == inst.r1_true);
    CHECK(rec.config.m == inst.config.m);

    SUBCASE("repeat runs are bit-identical") {
        const auto again = run_on(inst, delta, 5);
        CHECK(again.alpha == rec.alpha);
        CHECK(again.measured_error == rec.measured_error);
        CHECK(again.residual == rec.residual);
    }

    SUBCASE("heavy noise still yields a bounded reconstruction") {
        const auto noisy = run_on(inst, 0.5 * fnorm, 3);
        CHECK(noisy.measured_error <= 1.5 * l2_norm(inst.h0));
    }
}

TEST_CASE("sweeps enumerate the grid and reuse the instance") {
    const Instance inst = make_instance(config_for(200), {ProfileKind::poly_bump, 1.0});
    const double fnorm = l2_norm(inst.f0);
    const std::vector<double> deltas = {1e-1 * fnorm, 1e-3 * fnorm};
    const std::vector<std::uint64_t> seeds = {1, 2, 3};

    const auto records = sweep_on(inst, deltas, seeds);
    REQUIRE(records.size() == deltas.size() * seeds.size());

    SUBCASE("order is delta-major, seed-minor, and entries match single runs") {
        for (size_t d = 0; d < deltas.size(); ++d) {
            for (size_t s = 0; s < seeds.size(); ++s) {
                const auto& r = records[d * seeds.size() + s];
                CHECK(r.delta == deltas[d]);
                CHECK(r.seed == seeds[s]);
            }
        }
        const auto lone = run_on(inst, deltas[1], seeds[2]);
        const auto& same = records[1 * seeds.size() + 2];
        CHECK(same.alpha == lone.alpha);
        CHECK(same.measured_error == lone.measured_error);
    }

    SUBCASE("less noise helps: median error drops with delta") {
        std::vector<double> coarse, fine;
        for (const auto& r : records) {
            (r.delta == deltas[0] ? coarse : fine).push_back(r.measured_error);
        }
        CHECK(median_of(fine) < median_of(coarse));
    }
}

TEST_CASE("csv output is stable and parseable") {
    const Instance inst = make_instance(config_for(200), {ProfileKind::poly_bump, 1.0});
    const auto records = sweep_on(inst, {1e-2 * l2_norm(inst.f0)}, {1, 2});

    CHECK(csv_header() ==
          "x0,t0,m,n_modes,r1,profile,scale_to_r1_fraction,delta,seed,"
          "alpha,measured_error,bound2omega,residual,wall_time");

    std::ostringstream out;
    write_csv(out, records);
    const std::string text = out.str();

    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == csv_header());

    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(field_at(line, 5) == "poly_bump");
        // 17 significant digits round trip bit-exactly.
        CHECK(std::stod(field_at(line, 9)) == records[static_cast<size_t>(rows - 1)].alpha);
        CHECK(std::stod(field_at(line, 10)) ==
              records[static_cast<size_t>(rows - 1)].measured_error);
    }
    CHECK(rows == 2);

    std::ostringstream again;
    write_csv(again, records);
    CHECK(again.str() == text);
}

}  // TEST_SUITE
