#pragma once

#include <cstddef>
#include <vector>

#include "rsl/profile.hpp"

namespace rsl {

/// Samples with omega below this value sit on the tip and are excluded.
inline constexpr double tip_omega_threshold = 1e-12;

/// Pointwise curvature of a warped profile. Every vector is aligned with
/// `sample`, the indices of the profile samples that were evaluated.
struct CurvatureReport {
    std::vector<std::size_t> sample;
    std::vector<std::size_t> tip_singular;  // excluded samples
    std::vector<double> R;
    std::vector<double> Ric_rr;
    std::vector<double> Ric_sph;   // eigenvalue on the fibre directions
    std::vector<double> K_rad;
    std::vector<double> K_sph;
    std::vector<double> H;
    std::vector<double> R_sigma;
    std::vector<double> residual_1;
    std::vector<double> residual_2;
};

/// Throws TipSingular when no sample has omega above the tip threshold.
CurvatureReport curvature(const RadialProfile& prof);

struct HessianLaplacian {
    std::vector<std::size_t> sample;
    std::vector<double> f_pp;       // finite differences of f'
    std::vector<double> laplacian;  // f'' + m (omega'/omega) f'
};

HessianLaplacian hessian_laplacian(const RadialProfile& prof);

struct ResidualReport {
    std::vector<std::size_t> sample;
    std::vector<double> res1;
    std::vector<double> res2;
    std::vector<double> rel1;  // |res1| over its largest constituent term
    std::vector<double> rel2;
    double sup_rel1 = 0.0;
    double sup_rel2 = 0.0;
    std::size_t worst_sample = 0;

    double sup() const { return sup_rel1 > sup_rel2 ? sup_rel1 : sup_rel2; }
};

/// Residuals of the radial and fibre components of the soliton equation.
/// f'' comes from centred finite differences of f', so the two samples at
/// each end are skipped.
ResidualReport soliton_residual(const RadialProfile& prof);

/// Threshold applied to ResidualReport::sup() before a profile counts as a soliton.
inline constexpr double soliton_acceptance_tol = 1e-6;

struct IdentityReport {
    std::vector<std::size_t> sample;
    std::vector<double> laplacian_dev;   // Laplacian f against (n rho - 1) R + n lambda
    std::vector<double> gradient_dev;    // (1 - 2 m rho) R' against 2 Ric_rr f'
    std::vector<double> divergence_dev;  // (1 - 2 m rho) Laplacian R against <grad R, grad f> + 2(rho R^2 - |Ric|^2 + lambda R)
    double sup_laplacian = 0.0;
    double sup_gradient = 0.0;
    double sup_divergence = 0.0;
    // Only for rho = 1/(2m): sup of |Ric_rr f'| relative to |Ric| |f'|.
    bool schouten = false;
    double sup_schouten_radial = 0.0;
};

IdentityReport identity_checks(const RadialProfile& prof);

struct LevelSetReport {
    std::vector<std::size_t> sample;
    std::vector<std::size_t> critical;  // samples with f' = 0, excluded
    std::vector<double> h_norm2;          // m (omega'/omega)^2
    std::vector<double> h_norm2_riccati;  // -H' - Ric_rr
    std::vector<double> H;
    std::vector<double> R_sigma_gauss;
    std::vector<double> R_sigma_direct;
    double sup_gauss_dev = 0.0;  // |gauss - direct| / (1 + |direct|)
};

/// Throws CriticalLevel when every sample has f' = 0.
LevelSetReport level_set_geometry(const RadialProfile& prof);

/// Area of the unit sphere S^m.
double sphere_area(int m);

/// Volume of the ball of radius r about the tip, by Hermite-corrected
/// trapezoidal quadrature of omega^m. Throws OutOfRange.
double ball_volume(const RadialProfile& prof, double r);

/// Ball volumes at every sample radius.
std::vector<double> ball_volumes(const RadialProfile& prof);

/// Scalar curvature at the first sample point r -> 0+, extrapolated by a
/// quadratic through the first three evaluated samples.
double tip_scalar_curvature(const RadialProfile& prof);

}  // namespace rsl
