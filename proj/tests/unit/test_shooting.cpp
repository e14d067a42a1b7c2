#include <doctest.h>

#include <cmath>

#include "rsl/errors.hpp"
#include "rsl/phase_system.hpp"
#include "rsl/shooting.hpp"
#include "rsl/warped_geometry.hpp"
#include "support.hpp"

using namespace rsl;
using rsl::test::constructed;

TEST_CASE("epsilon families are ordered") {
    for (double rho : {0.0, -1.0, 0.5, 1.0}) {
        const SolitonParams p{3, rho, 0.0, 1};
        FamilyOptions opts;
        opts.ladder = {1e-2, 1e-3, 1e-4};
        const auto fam = build_family(p, opts);
        const auto rep = check_ordering(fam);
        CAPTURE(rho);
        CHECK(rep.ordered);
        CHECK(rep.bounds_hold);
        CHECK(rep.comparisons == 2 * fam.grid.size());
        CHECK(rep.resolved > 0);
    }
}

TEST_CASE("family members do not depend on the thread count") {
    const SolitonParams p{3, -1.0, 0.0, 1};
    FamilyOptions one, many;
    many.jobs = 3;
    const auto a = build_family(p, one);
    const auto b = build_family(p, many);
    CHECK(a.x == b.x);
    CHECK(a.log_x == b.log_x);
}

TEST_CASE("members start at 1 + eps below the Schouten value and 1 - eps above 1/m") {
    const auto below = epsilon_trajectory({3, 0.0, 0.0, 1}, 1e-3, 10.0);
    CHECK(below.x_at(0.0) == doctest::Approx(1.001).epsilon(1e-14));
    const auto above = epsilon_trajectory({3, 1.0, 0.0, 1}, 1e-3, 10.0);
    CHECK(above.x_at(0.0) == doctest::Approx(0.999).epsilon(1e-14));
    CHECK(above.log_x_at(0.0) == doctest::Approx(std::log(0.999)).epsilon(1e-14));
}

TEST_CASE("epsilon members reject bad input") {
    CHECK_THROWS_AS(epsilon_trajectory({3, 0.3, 0.0, 1}, 1e-3, 10.0), OutOfRegime);
    CHECK_THROWS_AS(epsilon_trajectory({3, 0.0, 1.0, 1}, 1e-3, 10.0), NotSteady);
    CHECK_THROWS_AS(epsilon_trajectory({3, 0.0, 0.0, 1}, 0.0, 10.0), InvalidParameters);
    CHECK_THROWS_AS(epsilon_trajectory({3, 0.0, 0.0, 1}, 1e-3, -1.0), InvalidParameters);
}

TEST_CASE("the limit needs three converged levels") {
    const SolitonParams p{3, 0.0, 0.0, 1};
    FamilyOptions two;
    two.ladder = {1e-2, 1e-3};
    CHECK_THROWS_AS(extract_limit(build_family(p, two)), NotConverged);
    FamilyOptions coarse;
    coarse.ladder = {1e-1, 5e-2, 2e-2};
    CHECK_THROWS_AS(extract_limit(build_family(p, coarse), 1e-8), NotConverged);
    const auto lim = extract_limit(build_family(p));
    for (bool c : lim.converged) CHECK(c);
}

TEST_CASE("the unstable direction at P") {
    for (int n : {3, 4, 5}) {
        for (double rho : {-1.0, 0.0, 0.5, 0.3, 1.0}) {
            const SolitonParams p{n, rho, 0.0, 1};
            if (p.is_schouten()) continue;
            const auto d = unstable_direction(p);
            const auto j = steady_jacobian_at_p(p);
            CHECK(d.eigenvalue == doctest::Approx(2.0).epsilon(1e-12));
            CHECK(std::abs((j.xx - 2.0) * d.vx + j.xy * d.vy) < 1e-12);
            CHECK(std::abs(j.yx * d.vx + (j.yy - 2.0) * d.vy) < 1e-12);
            if (d.vx != 0.0) CHECK(d.vx == -1.0);
        }
    }
}

TEST_CASE("steady separatrices are monotone") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, -1.0}, {4, 0.1}, {3, 0.5}, {3, 1.0}, {4, 0.5}}) {
        const SolitonParams p{n, rho, 0.0, 1};
        const bool below = classify_steady(p) == SteadyRegime::below_schouten;
        const auto& trace = constructed(n, rho).reconstruction.trace;
        const auto ps = trace.phase_samples(0.05);
        REQUIRE(ps.t.size() > 100);
        std::size_t bad = 0, early_underflow = 0;
        for (std::size_t i = 0; i < ps.t.size(); ++i) {
            if (ps.x[i] == 0.0) {  // underflow in the cigar tail
                if (ps.log_x[i] > -700.0) ++early_underflow;
                continue;
            }
            const auto v = steady_vector_field(p, {ps.x[i], ps.y[i], ps.omega[i], ps.t[i]});
            if (!(v.dx < 0.0) || !(below ? v.dy > 0.0 : v.dy < 0.0)) ++bad;
        }
        CAPTURE(p.describe());
        CHECK(bad == 0);
        CHECK(early_underflow == 0);
    }
}

TEST_CASE("constructed profiles are positively curved solitons") {
    for (auto [n, rho] : {std::pair{3, 0.0}, {3, -1.0}, {3, 0.1}, {3, 0.5}, {3, 1.0}, {4, 0.0}, {5, -0.5}}) {
        const auto& c = constructed(n, rho);
        const auto& prof = c.profile;
        CAPTURE(prof.params.describe());
        CHECK(prof.normalization == Normalization::R_at_origin_one);
        CHECK(c.ordering.ordered);
        CHECK(soliton_residual(prof).sup() < soliton_acceptance_tol);
        std::size_t bad = 0;
        for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
            const double k_sph = (1.0 - prof.omega_p[i] * prof.omega_p[i]) / (prof.omega[i] * prof.omega[i]);
            const bool flat_tail = prof.omega_p[i] == 0.0 && prof.omega_pp[i] == 0.0;
            if (!(prof.omega_pp[i] < 0.0 || flat_tail) || !(k_sph > 0.0)) ++bad;
        }
        CHECK(bad == 0);
        CHECK(prof.r.front() > 0.0);
        CHECK(prof.omega.front() / prof.r.front() == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("construction outside the existence regimes is refused") {
    CHECK_THROWS_AS(construct_steady({3, 0.3, 0.0, 1}), OutOfRegime);
    CHECK_THROWS_AS(construct_steady({3, 0.25, 0.0, 1}), SchoutenSingular);
    CHECK_THROWS_AS(trace_separatrix({3, 0.0, 1.0, 1}, 10.0), NotSteady);
}

TEST_CASE("non-existence failure modes") {
    struct Case {
        int n;
        double rho;
        FailureMode mode;
    };
    const Case cases[] = {
        {3, 0.25, FailureMode::schouten_constraint}, {3, 0.26, FailureMode::x_zero_crossing},
        {3, 0.30, FailureMode::x_zero_crossing},     {3, 0.40, FailureMode::x_zero_crossing},
        {3, 1.0 / 3.0, FailureMode::y_sign},         {4, 1.0 / 6.0, FailureMode::schouten_constraint},
        {4, 0.25, FailureMode::y_sign},              {4, 0.3, FailureMode::x_zero_crossing},
    };
    for (const auto& c : cases) {
        const auto rep = verify_nonexistence({c.n, c.rho, 0.0, 1});
        CAPTURE(c.n);
        CAPTURE(c.rho);
        CHECK(rep.mode == c.mode);
        if (c.mode == FailureMode::schouten_constraint) {
            CHECK_FALSE(rep.integrated);
        } else {
            CHECK(rep.eigenvalue == doctest::Approx(2.0));
        }
        if (c.mode == FailureMode::x_zero_crossing) {
            CHECK(rep.x_zero_reached);
            CHECK(std::abs(rep.x_event) < 1e-9);
        }
        if (c.mode == FailureMode::y_sign) {
            CHECK(rep.y_opposes_rate);
            CHECK(rep.y_sign_samples > 0);
        }
    }
    CHECK_THROWS_AS(verify_nonexistence({3, 0.0, 0.0, 1}), OutOfRegime);
    CHECK_THROWS_AS(verify_nonexistence({3, 0.3, 0.0, 1}, 1e-6, 0.5), NoEventWithinSpan);
}

TEST_CASE("normalization rescales to unit tip curvature") {
    ConstructOptions raw;
    raw.normalize = false;
    const auto c = construct_steady({3, -1.0, 0.0, 1}, raw);
    CHECK(c.profile.normalization == Normalization::raw);
    const auto norm = normalize_profile(c.profile);
    CHECK(tip_scalar_curvature(norm) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(soliton_residual(norm).sup() < soliton_acceptance_tol);
}
