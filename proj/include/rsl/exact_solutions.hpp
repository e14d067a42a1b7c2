#pragma once

#include <cstddef>
#include <vector>

#include "rsl/params.hpp"
#include "rsl/profile.hpp"

namespace rsl {

/// One admissible cylinder dr^2 + omega0^2 g_kappa with f = f_coeff r^2 + a0 r + b0.
struct CylinderSolution {
    int kappa = 0;
    double omega0_sq = 0.0;
    double f_coeff = 0.0;
    bool trivial = false;      // flat fibre with lambda = 0
    bool omega0_free = false;  // any omega0 works; omega0_sq holds the representative 1
};

/// Enumerates every cylinder for (n, rho, lambda). An empty list is a valid answer.
std::vector<CylinderSolution> cylinder_solutions(int n, double rho, double lambda);

/// Uniform sampling grid for closed-form profiles.
struct SampleGrid {
    double start = 0.0;
    double length = 10.0;
    double step = 0.05;
};

RadialProfile cylinder_profile(int n, double rho, double lambda, const CylinderSolution& sol, double a0 = 0.0,
                               double b0 = 0.0, const SampleGrid& grid = {});

/// Flat space in polar form: omega = r + a0/lambda, f = lambda r^2/2 + a0 r + b0.
/// The grid starts no earlier than the tip. InvalidParameters for lambda = 0
/// with a0 != 0, since then f' omega cannot vanish.
RadialProfile flat_gaussian(int n, double rho, double lambda, double a0 = 0.0, double b0 = 0.0,
                            const SampleGrid& grid = {});

struct SchoutenConstants {
    double r0 = 0.0;
    double c = 0.0;  // linear coefficient of f for a = 0
    double d = 0.0;  // constant of f for a = 0
    double e = 0.0;  // constant of f for a = 1
};

/// Local shrinking solutions for n = 3, rho = 1/4 with omega = a (r - r0) + b.
/// a = 0 gives R x S^2 (needs 2 lambda b^2 = 1), a = 1 gives flat space.
/// Samples r in [r0, r0 + grid.length]. Throws InvalidParameters otherwise.
RadialProfile schouten_shrinker_local(double a, double b, double lambda, const SchoutenConstants& k = {},
                                      const SampleGrid& grid = {});

struct GradientInequalityReport {
    double a = 0.0;
    std::vector<double> r;
    std::vector<double> lower_margin;  // |grad f|^2 - 2 lambda f - f'(0)^2
    std::vector<double> upper_margin;  // a f + f'(0)^2 - |grad f|^2
    double min_lower_margin = 0.0;
    double min_upper_margin = 0.0;
    double max_abs_lower_margin = 0.0;
    double sufficient_margin = 0.0;  // min of a - 2 lambda - R/2
    bool lower_holds = false;
    bool upper_holds = false;
    bool sufficient = false;

    bool holds() const { return lower_holds && upper_holds; }
};

/// Default constant for the upper bound: 3 lambda + max R over the profile.
double documented_gradient_constant(const RadialProfile& prof);

/// Shrinking Schouten profiles only (OutOfRegime otherwise). Requires a sample
/// at r = 0 with f(0) = 0, else GaugeViolation. Bounds are compared with a
/// tolerance of 1e-12 relative to the size of the terms.
GradientInequalityReport gradient_inequality_check(const RadialProfile& prof, double a);

}  // namespace rsl
