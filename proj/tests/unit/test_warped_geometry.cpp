#include <doctest.h>

#include <cmath>

#include "rsl/errors.hpp"
#include "rsl/exact_solutions.hpp"
#include "rsl/warped_geometry.hpp"
#include "support.hpp"

using namespace rsl;
using rsl::test::constructed;

TEST_CASE("scalar curvature is the trace of Ricci") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, -1.0}, {4, 0.5}}) {
        const auto& prof = constructed(n, rho).profile;
        const auto c = curvature(prof);
        const double m = n - 1;
        for (std::size_t i = 0; i < c.sample.size(); ++i) {
            const double trace = c.Ric_rr[i] + m * c.Ric_sph[i];
            REQUIRE(std::abs(c.R[i] - trace) <= 1e-10 * std::max(std::abs(c.R[i]), 1e-300));
        }
    }
}

TEST_CASE("constructed steady profiles have positive sectional curvature") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, -1.0}, {3, 0.5}, {4, 0.0}}) {
        const auto& prof = constructed(n, rho).profile;
        const auto c = curvature(prof);
        CAPTURE(n);
        CAPTURE(rho);
        std::size_t bad = 0;
        // Underflow makes the far tail of the cigar exactly flat.
        for (std::size_t i = 1; i + 1 < c.sample.size(); ++i)
            if (!(c.K_rad[i] > 0.0 || prof.omega_pp[c.sample[i]] == 0.0) || !(c.K_sph[i] > 0.0)) ++bad;
        CHECK(bad == 0);
    }
}

TEST_CASE("curvature scales under homothety") {
    const auto& prof = constructed(3, 0.0).profile;
    const double c = 2.0;
    const auto a = curvature(prof);
    const auto b = curvature(scale_profile(prof, c));
    REQUIRE(a.sample == b.sample);
    for (std::size_t i = 0; i < a.sample.size(); ++i) {
        CHECK(b.R[i] == doctest::Approx(a.R[i] / (c * c)).epsilon(1e-12));
        CHECK(b.K_rad[i] == doctest::Approx(a.K_rad[i] / (c * c)).epsilon(1e-12));
        CHECK(b.K_sph[i] == doctest::Approx(a.K_sph[i] / (c * c)).epsilon(1e-12));
        CHECK(b.H[i] == doctest::Approx(a.H[i] / c).epsilon(1e-12));
    }
}

TEST_CASE("Gauss and Riccati agree on level sets") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, -1.0}, {3, 0.5}}) {
        const auto l = level_set_geometry(constructed(n, rho).profile);
        CHECK(l.sup_gauss_dev < 1e-8);
    }
    const auto cyl = cylinder_solutions(4, 0.2, 1.0);
    REQUIRE(!cyl.empty());
    const auto prof = cylinder_profile(4, 0.2, 1.0, cyl[0], 0.0, 0.0, {0.1, 5.0, 0.05});
    CHECK(level_set_geometry(prof).sup_gauss_dev < 1e-8);
}

TEST_CASE("exact profiles have vanishing residuals") {
    const auto prof = flat_gaussian(4, 0.3, 1.5);
    const auto res = soliton_residual(prof);
    CHECK(res.sup() < 1e-12);
    const auto ids = identity_checks(prof);
    CHECK(ids.sup_laplacian < 1e-10);
}

TEST_CASE("the residual detects a wrong potential") {
    auto prof = flat_gaussian(3, 0.0, 1.0);
    for (auto& fp : prof.f_p) fp *= 1.01;
    CHECK(soliton_residual(prof).sup() > 1e-3);
}

TEST_CASE("constructed profiles satisfy the identities") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, -1.0}, {3, 0.5}}) {
        const auto& prof = constructed(n, rho).profile;
        CHECK(soliton_residual(prof).sup() < soliton_acceptance_tol);
        const auto ids = identity_checks(prof);
        CHECK(ids.sup_laplacian < 1e-5);
        CHECK(ids.sup_gradient < 1e-5);
        CHECK(ids.sup_divergence < 1e-5);
    }
}

TEST_CASE("ball volume of flat space") {
    for (int n : {3, 4, 5}) {
        const auto prof = flat_gaussian(n, 0.0, 1.0);
        // Hermite-corrected trapezoid is exact for omega^m up to cubics.
        const double tol = n <= 4 ? 1e-12 : 1e-5;
        for (double r : {0.5, 2.0, 7.3}) {
            const double exact = sphere_area(n - 1) * std::pow(r, n) / n;
            CAPTURE(n);
            CHECK(ball_volume(prof, r) == doctest::Approx(exact).epsilon(tol));
        }
        CHECK_THROWS_AS(ball_volume(prof, 100.0), OutOfRange);
    }
    CHECK(sphere_area(2) == doctest::Approx(4.0 * M_PI));
    CHECK(sphere_area(1) == doctest::Approx(2.0 * M_PI));
}

TEST_CASE("normalized profiles have unit tip curvature") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, 0.5}, {4, -0.5}}) {
        CHECK(tip_scalar_curvature(constructed(n, rho).profile) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("degenerate inputs are rejected") {
    RadialProfile tip;
    tip.params = {3, 0.0, 0.0, 1};
    for (int i = 0; i < 5; ++i) tip.push_back(0.1 * i, 0.0, 1.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(curvature(tip), TipSingular);
    // Constant potential: every level is critical.
    CHECK_THROWS_AS(level_set_geometry(flat_gaussian(3, 0.0, 0.0, 0.0, 1.0)), CriticalLevel);
}
