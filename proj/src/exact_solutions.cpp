#include "rsl/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsl/errors.hpp"
#include "rsl/warped_geometry.hpp"

namespace rsl {

namespace {

std::size_t grid_count(const SampleGrid& g) {
    if (!(g.step > 0.0) || !(g.length > 0.0)) throw InvalidParameters("sample grid needs positive step and length");
    return static_cast<std::size_t>(std::llround(g.length / g.step)) + 1;
}

double grid_point(const SampleGrid& g, std::size_t i) { return g.start + g.step * static_cast<double>(i); }

}  // namespace

std::vector<CylinderSolution> cylinder_solutions(int n, double rho, double lambda) {
    SolitonParams{n, rho, lambda, 1}.validate();
    const double m = n - 1.0;
    std::vector<CylinderSolution> out;
    if (rho_equals(rho, 1.0 / m)) {
        if (lambda != 0.0) return out;
        for (int kappa : {-1, 0, 1}) {
            CylinderSolution s;
            s.kappa = kappa;
            s.omega0_sq = 1.0;
            s.omega0_free = true;
            s.trivial = kappa == 0;
            s.f_coeff = (n - 2.0) * kappa / (2.0 * s.omega0_sq);
            out.push_back(s);
        }
        return out;
    }
    const double slope = 1.0 - m * rho;
    if (lambda == 0.0) {
        out.push_back(CylinderSolution{0, 1.0, 0.0, true, true});
        return out;
    }
    // lambda omega0^2 = (n - 2)(1 - m rho) kappa fixes the sign of kappa.
    const double q = (n - 2.0) * slope / lambda;
    CylinderSolution s;
    s.kappa = q > 0.0 ? 1 : -1;
    s.omega0_sq = std::abs(q);
    s.f_coeff = lambda / (2.0 * slope);
    out.push_back(s);
    return out;
}

RadialProfile cylinder_profile(int n, double rho, double lambda, const CylinderSolution& sol, double a0, double b0,
                               const SampleGrid& grid) {
    RadialProfile prof;
    prof.params = SolitonParams{n, rho, lambda, sol.kappa};
    prof.params.validate();
    if (!(sol.omega0_sq > 0.0)) throw InvalidParameters("cylinder radius must be positive");
    const double w = std::sqrt(sol.omega0_sq);
    const std::size_t count = grid_count(grid);
    prof.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = grid_point(grid, i);
        prof.push_back(r, w, 0.0, 0.0, sol.f_coeff * r * r + a0 * r + b0, 2.0 * sol.f_coeff * r + a0);
    }
    return prof;
}

RadialProfile flat_gaussian(int n, double rho, double lambda, double a0, double b0, const SampleGrid& grid) {
    RadialProfile prof;
    prof.params = SolitonParams{n, rho, lambda, 1};
    prof.params.validate();
    if (lambda == 0.0 && a0 != 0.0) throw InvalidParameters("a steady flat solution has constant f");
    const double shift = lambda == 0.0 ? 0.0 : a0 / lambda;
    SampleGrid g = grid;
    g.start = std::max(grid.start, -shift);
    const std::size_t count = grid_count(g);
    prof.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = grid_point(g, i);
        prof.push_back(r, r + shift, 1.0, 0.0, 0.5 * lambda * r * r + a0 * r + b0, lambda * r + a0);
    }
    return prof;
}

RadialProfile schouten_shrinker_local(double a, double b, double lambda, const SchoutenConstants& k,
                                      const SampleGrid& grid) {
    if (a < 0.0 || !(b > 0.0)) throw InvalidParameters("need a >= 0 and b > 0");
    if (!(lambda > 0.0)) throw InvalidParameters("shrinking solutions need lambda > 0");
    RadialProfile prof;
    prof.params = SolitonParams{3, 0.25, lambda, 1};
    SampleGrid g = grid;
    g.start = k.r0;
    const std::size_t count = grid_count(g);
    prof.reserve(count);
    if (a == 0.0) {
        if (std::abs(2.0 * lambda * b * b - 1.0) > 1e-12)
            throw InvalidParameters("the R x S^2 solution needs 2 lambda b^2 = 1");
        for (std::size_t i = 0; i < count; ++i) {
            const double s = grid_point(g, i) - k.r0;
            prof.push_back(s + k.r0, b, 0.0, 0.0, lambda * s * s + k.c * s + k.d, 2.0 * lambda * s + k.c);
        }
        return prof;
    }
    if (a != 1.0) throw InvalidParameters("omega' is 0 or 1 for these solutions; got a != 0, 1");
    for (std::size_t i = 0; i < count; ++i) {
        const double s = grid_point(g, i) - k.r0;
        prof.push_back(s + k.r0, s + b, 1.0, 0.0, 0.5 * lambda * s * s + lambda * b * s + k.e, lambda * (s + b));
    }
    return prof;
}

double documented_gradient_constant(const RadialProfile& prof) {
    const auto curv = curvature(prof);
    const double max_R = *std::max_element(curv.R.begin(), curv.R.end());
    return 3.0 * prof.params.lambda + max_R;
}

GradientInequalityReport gradient_inequality_check(const RadialProfile& prof, double a) {
    prof.validate();
    const auto& p = prof.params;
    if (!p.is_schouten() || !(p.lambda > 0.0))
        throw OutOfRegime("gradient inequality applies to shrinking Schouten profiles");
    if (prof.r.front() != 0.0 || std::abs(prof.f.front()) > 1e-12)
        throw GaugeViolation("profile must start at r = 0 with f(0) = 0");
    const double lam = p.lambda;
    const double fp0 = prof.f_p.front();
    const auto curv = curvature(prof);

    GradientInequalityReport rep;
    rep.a = a;
    rep.min_lower_margin = std::numeric_limits<double>::infinity();
    rep.min_upper_margin = std::numeric_limits<double>::infinity();
    rep.lower_holds = true;
    rep.upper_holds = true;
    for (std::size_t i = 0; i < prof.size(); ++i) {
        const double g2 = prof.f_p[i] * prof.f_p[i];
        const double f = prof.f[i];
        const double lo = 2.0 * lam * f + fp0 * fp0;
        const double hi = a * f + fp0 * fp0;
        const double tol = 1e-12 * std::max({1.0, g2, std::abs(lo), std::abs(hi)});
        rep.r.push_back(prof.r[i]);
        rep.lower_margin.push_back(g2 - lo);
        rep.upper_margin.push_back(hi - g2);
        rep.min_lower_margin = std::min(rep.min_lower_margin, g2 - lo);
        rep.min_upper_margin = std::min(rep.min_upper_margin, hi - g2);
        rep.max_abs_lower_margin = std::max(rep.max_abs_lower_margin, std::abs(g2 - lo));
        if (g2 - lo < -tol) rep.lower_holds = false;
        if (hi - g2 < -tol) rep.upper_holds = false;
    }
    rep.sufficient_margin = std::numeric_limits<double>::infinity();
    for (double R : curv.R) rep.sufficient_margin = std::min(rep.sufficient_margin, a - 2.0 * lam - 0.5 * R);
    rep.sufficient = rep.sufficient_margin > 0.0;
    return rep;
}

}  // namespace rsl
