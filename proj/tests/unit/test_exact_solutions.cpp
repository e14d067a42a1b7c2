#include <doctest.h>

#include <cmath>

#include "rsl/errors.hpp"
#include "rsl/exact_solutions.hpp"
#include "rsl/warped_geometry.hpp"
#include "support.hpp"

using namespace rsl;
using rsl::test::Gen;

TEST_CASE("cylinders match the oracle") {
    // (n, rho, lambda) -> omega0^2 and f'' for the round fibre; no hyperbolic ones.
    struct Case {
        int n;
        double rho, lambda, omega0_sq, f_pp;
    };
    const Case cases[] = {{3, 0.0, 1.0, 1.0, 1.0},
                          {4, 0.2, 1.0, 0.8, 2.5},
                          {4, 1.0, -1.0, 4.0, 0.5},
                          {5, -0.5, 2.0, 4.5, 2.0 / 3.0}};
    for (const auto& c : cases) {
        const auto list = cylinder_solutions(c.n, c.rho, c.lambda);
        CAPTURE(c.n);
        CAPTURE(c.rho);
        REQUIRE(list.size() == 1);
        CHECK(list[0].kappa == 1);
        CHECK(list[0].omega0_sq == doctest::Approx(c.omega0_sq).epsilon(1e-14));
        CHECK(2.0 * list[0].f_coeff == doctest::Approx(c.f_pp).epsilon(1e-14));
        CHECK_FALSE(list[0].trivial);
    }
}

TEST_CASE("steady cylinders are flat and trivial") {
    const auto list = cylinder_solutions(3, 0.0, 0.0);
    REQUIRE(list.size() == 1);
    CHECK(list[0].kappa == 0);
    CHECK(list[0].trivial);
    CHECK(list[0].omega0_free);
}

TEST_CASE("cylinders satisfy the trace identity") {
    Gen g(51);
    for (int i = 0; i < 300; ++i) {
        const int n = g.integer(3, 8);
        const double rho = g.uniform(-3, 3), lambda = g.uniform(-3, 3);
        for (const auto& s : cylinder_solutions(n, rho, lambda)) {
            const double m = n - 1;
            const double R = m * (m - 1) * s.kappa / s.omega0_sq;
            CAPTURE(n);
            CAPTURE(rho);
            CAPTURE(lambda);
            REQUIRE(s.omega0_sq > 0.0);
            CHECK(2.0 * s.f_coeff == doctest::Approx((n * rho - 1.0) * R + n * lambda).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("closed-form profiles are solitons to machine precision") {
    Gen g(52);
    for (int i = 0; i < 100; ++i) {
        const int n = g.integer(3, 7);
        const double rho = g.uniform(-2, 2), lambda = g.uniform(-2, 2);
        for (const auto& s : cylinder_solutions(n, rho, lambda)) {
            if (s.trivial) continue;
            const auto prof = cylinder_profile(n, rho, lambda, s, g.uniform(-1, 1) * (lambda != 0.0), 0.3);
            REQUIRE(soliton_residual(prof).sup() < 1e-12);
        }
        const double a0 = g.uniform(-1, 1);
        const auto flat = flat_gaussian(n, rho, lambda, a0, g.uniform(-1, 1));
        REQUIRE(soliton_residual(flat).sup() < 1e-12);
    }
}

TEST_CASE("homothety maps solutions to solutions") {
    const auto s = cylinder_solutions(4, 0.2, 1.0).at(0);
    const auto prof = cylinder_profile(4, 0.2, 1.0, s);
    for (double c : {0.5, 2.0, 3.0}) {
        const auto scaled = scale_profile(prof, c);
        CHECK(scaled.params.lambda == doctest::Approx(1.0 / (c * c)));
        CHECK(soliton_residual(scaled).sup() < 1e-12);
    }
    const auto flat = scale_profile(flat_gaussian(3, 0.0, 2.0), 2.0);
    CHECK(soliton_residual(flat).sup() < 1e-12);
}

TEST_CASE("flat space starts at the tip") {
    const auto prof = flat_gaussian(3, 0.0, 2.0, 1.0);
    // omega = r + 1/2 vanishes at r = -1/2.
    CHECK(prof.omega.front() >= 0.0);
    CHECK(prof.omega_p.front() == 1.0);
    CHECK_THROWS_AS(flat_gaussian(3, 0.0, 0.0, 1.0), InvalidParameters);
}

TEST_CASE("local Schouten shrinkers") {
    const double lambda = 0.5, b = 1.0;  // 2 lambda b^2 = 1
    const auto cyl = schouten_shrinker_local(0.0, b, lambda);
    CHECK(cyl.params.n == 3);
    CHECK(cyl.params.rho == 0.25);
    CHECK(soliton_residual(cyl).sup() < 1e-12);
    for (double w : cyl.omega) CHECK(w == b);
    const auto flat = schouten_shrinker_local(1.0, 0.7, lambda, {0.0, 0.0, 0.0, 0.0});
    CHECK(soliton_residual(flat).sup() < 1e-12);
    CHECK(flat.omega.front() == 0.7);
    CHECK_THROWS_AS(schouten_shrinker_local(0.0, 2.0, lambda), InvalidParameters);
    CHECK_THROWS_AS(schouten_shrinker_local(0.5, 1.0, lambda), InvalidParameters);
    CHECK_THROWS_AS(schouten_shrinker_local(1.0, 1.0, -1.0), InvalidParameters);
    const auto shifted = schouten_shrinker_local(1.0, 1.0, lambda, {2.0, 0.0, 0.0, 0.0});
    CHECK(shifted.r.front() == 2.0);
}

TEST_CASE("gradient inequality on the Schouten shrinkers") {
    Gen g(53);
    for (int i = 0; i < 50; ++i) {
        const double lambda = g.uniform(0.1, 3.0);
        const auto cyl = schouten_shrinker_local(0.0, 1.0 / std::sqrt(2.0 * lambda), lambda,
                                                 {0.0, g.uniform(0, 2), 0.0, 0.0});
        const auto flat = schouten_shrinker_local(1.0, g.uniform(0.1, 3.0), lambda);
        for (const auto* prof : {&cyl, &flat}) {
            const auto rep = gradient_inequality_check(*prof, documented_gradient_constant(*prof));
            CAPTURE(lambda);
            CHECK(rep.holds());
            CHECK(rep.sufficient);
        }
        const auto rep = gradient_inequality_check(flat, documented_gradient_constant(flat));
        CHECK(rep.max_abs_lower_margin < 1e-12);
    }
}

TEST_CASE("gradient inequality preconditions") {
    CHECK_THROWS_AS(gradient_inequality_check(flat_gaussian(3, 0.0, 1.0), 3.0), OutOfRegime);
    const auto off = schouten_shrinker_local(1.0, 1.0, 0.5, {0.0, 0.0, 0.0, 1.0});
    CHECK_THROWS_AS(gradient_inequality_check(off, 3.0), GaugeViolation);
    // A constant below 2 lambda + R breaks the upper bound on the cylinder.
    const auto cyl = schouten_shrinker_local(0.0, 1.0, 0.5, {0.0, 1.0, 0.0, 0.0});
    CHECK_FALSE(gradient_inequality_check(cyl, 0.1).upper_holds);
    // Lower margin on the cylinder is 2 lambda r (lambda r + c): negative near 0 when c < 0.
    const auto backwards = schouten_shrinker_local(0.0, 1.0, 0.5, {0.0, -1.0, 0.0, 0.0});
    CHECK_FALSE(gradient_inequality_check(backwards, 3.0).lower_holds);
}
