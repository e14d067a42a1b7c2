#include <doctest.h>

#include <cmath>

#include "rsl/asymptotics.hpp"
#include "rsl/errors.hpp"
#include "support.hpp"

using namespace rsl;
using rsl::test::constructed;
using rsl::test::Gen;

TEST_CASE("predicted exponents match the oracle") {
    // Rational values from tests/oracles/phase_oracle.py.
    struct Case {
        int n;
        double rho, omega, f, vol;
    };
    const Case cases[] = {{3, 0.0, 0.5, 1.0, 2.0},
                          {3, -1.0, 0.375, 1.25, 1.75},
                          {4, 0.0, 0.5, 1.0, 2.5},
                          {5, -0.5, 0.375, 1.25, 2.5}};
    for (const auto& c : cases) {
        const auto p = predicted_exponents({c.n, c.rho, 0.0, 1});
        CHECK(p.regime == AsymptoticRegime::power_law);
        CHECK(p.omega_exp == doctest::Approx(c.omega).epsilon(1e-15));
        CHECK(p.f_exp == doctest::Approx(c.f).epsilon(1e-15));
        CHECK(p.vol_exp == doctest::Approx(c.vol).epsilon(1e-15));
    }
    const auto cigar = predicted_exponents({3, 0.5, 0.0, 1});
    CHECK(cigar.regime == AsymptoticRegime::cigar);
    CHECK(cigar.omega_exp == 0.0);
    CHECK(cigar.f_exp == 2.0);
    CHECK(cigar.vol_exp == 1.0);
    CHECK_THROWS_AS(predicted_exponents({3, 0.3, 0.0, 1}), OutOfRegime);
    CHECK_THROWS_AS(predicted_exponents({3, 0.0, 1.0, 1}), NotSteady);
}

TEST_CASE("volume exponent is m times the omega exponent plus one") {
    Gen g(41);
    for (int i = 0; i < 500; ++i) {
        const int n = g.integer(3, 9);
        const double rho = g.uniform(-5.0, 1.0 / (2.0 * (n - 1)) - 1e-3);
        const auto p = predicted_exponents({n, rho, 0.0, 1});
        REQUIRE(p.vol_exp == doctest::Approx((n - 1) * p.omega_exp + 1.0).epsilon(1e-14));
    }
}

TEST_CASE("log-log fits are exact on power laws") {
    Gen g(42);
    for (int i = 0; i < 200; ++i) {
        const double k = g.uniform(-3.0, 3.0);
        const double scale = g.log_uniform(1e-6, 1e6);
        std::vector<double> r, v;
        double x = g.uniform(0.1, 2.0);
        for (int j = 0; j < 80; ++j) {
            r.push_back(x);
            v.push_back(scale * std::pow(x, k));
            x *= g.uniform(1.01, 1.3);
        }
        const auto fit = fit_exponent(r, v, g.uniform(0.1, 0.5));
        REQUIRE(fit.exponent == doctest::Approx(k).epsilon(1e-10).scale(1.0));
        REQUIRE(fit.std_error < 1e-10);
    }
}

TEST_CASE("fit input is validated") {
    const std::vector<double> r{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::vector<double> v(r.size(), 1.0);
    CHECK_THROWS_AS(fit_exponent(r, v, 0.0), InvalidParameters);
    CHECK_THROWS_AS(fit_exponent(r, v, 0.6), InvalidParameters);
    CHECK_THROWS_AS(fit_exponent(r, v, 0.1), InvalidParameters);  // two samples
    v.back() = -1.0;
    CHECK_THROWS_AS(fit_exponent(r, v, 0.25), NonpositiveData);
    CHECK_THROWS_AS(fit_exponent(r, std::vector<double>(3, 1.0), 0.25), InvalidParameters);
}

TEST_CASE("constructed profiles grow at the predicted rates") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, -1.0}, {4, 0.0}}) {
        const auto rep = analyze_profile(constructed(n, rho).profile);
        CAPTURE(n);
        CAPTURE(rho);
        CHECK(rep.omega_ok);
        CHECK(rep.f_ok);
        CHECK(rep.volume_ok);
        CHECK(rep.sensitivity.size() == 3);
    }
}

TEST_CASE("the cigar is asymptotically cylindrical") {
    for (int n : {3, 4}) {
        const auto rep = cigar_checks(constructed(n, 1.0 / (n - 1)).profile);
        CAPTURE(n);
        CHECK(rep.omega_bounded);
        CHECK(rep.f_ok);
        CHECK(rep.volume_ok);
    }
    CHECK_THROWS_AS(cigar_checks(constructed(3, 0.0).profile), OutOfRegime);
}

TEST_CASE("phase-time limits along the separatrix") {
    // Limits from the symbolic oracle: (y/t, t x, x y).
    struct Case {
        int n;
        double rho, y_t, t_x, x_y;
    };
    for (const auto& c : {Case{3, 0.0, 1.0, 1.0, 1.0}, Case{3, -1.0, 5.0, 0.6, 3.0}, Case{4, 0.0, 2.0, 1.0, 2.0}}) {
        const SolitonParams p{c.n, c.rho, 0.0, 1};
        const auto d = limit_diagnostics(constructed(c.n, c.rho).reconstruction.trace.phase_samples(0.05), p);
        CAPTURE(c.n);
        CAPTURE(c.rho);
        CHECK(d.y_over_t_expected == doctest::Approx(c.y_t));
        CHECK(d.t_x_expected == doctest::Approx(c.t_x));
        CHECK(d.x_y_expected == doctest::Approx(c.x_y));
        // y = A t + O(log t): the ratio converges slowly, the secant slope fast.
        CHECK(d.y_over_t == doctest::Approx(c.y_t).epsilon(0.02));
        CHECK(d.y_slope == doctest::Approx(c.y_t).epsilon(1e-3));
        CHECK(d.t_x == doctest::Approx(c.t_x).epsilon(0.02));
        CHECK(d.x_y == doctest::Approx(c.x_y).epsilon(1e-3));
    }
    const SolitonParams cig{3, 0.5, 0.0, 1};
    const auto d = limit_diagnostics(constructed(3, 0.5).reconstruction.trace.phase_samples(0.05), cig);
    CHECK(d.cigar);
    CHECK(d.y_slope == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(d.log_x_over_t2 == doctest::Approx(-0.5).epsilon(0.02));
}

TEST_CASE("short trajectories are refused") {
    PhaseSamples ps;
    for (int i = 0; i < 10; ++i) {
        ps.t.push_back(i);
        ps.x.push_back(0.5);
        ps.log_x.push_back(std::log(0.5));
        ps.y.push_back(i);
        ps.omega.push_back(1.0 + i);
    }
    CHECK_THROWS_AS(limit_diagnostics(ps, {3, 0.0, 0.0, 1}), TailTooShort);
}

TEST_CASE("phase samples of a profile") {
    const auto& prof = constructed(3, 0.0).profile;
    const auto ps = phase_samples_from_profile(prof);
    REQUIRE(ps.t.size() == prof.size());
    CHECK(ps.t.front() == 0.0);
    for (std::size_t i = 1; i < ps.t.size(); ++i) REQUIRE(ps.t[i] > ps.t[i - 1]);
    CHECK(ps.t.back() > min_diagnostic_time);
    const auto d = limit_diagnostics(ps, prof.params);
    CHECK(d.y_slope == doctest::Approx(1.0).epsilon(0.01));
}
