#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsl/params.hpp"
#include "rsl/profile.hpp"
#include "rsl/shooting.hpp"

namespace rsl {

enum class AsymptoticRegime { power_law, cigar };

const char* to_string(AsymptoticRegime r);

/// Growth exponents of omega, |f| and ball volume at infinity.
struct AsymptoticPrediction {
    double omega_exp = 0.0;
    double f_exp = 0.0;
    double vol_exp = 0.0;
    AsymptoticRegime regime = AsymptoticRegime::power_law;
};

/// Steady, kappa = 1, rho < 1/(2m) or rho >= 1/m; OutOfRegime otherwise.
AsymptoticPrediction predicted_exponents(const SolitonParams& p);

inline constexpr double omega_exp_tol = 0.02;
inline constexpr double f_exp_tol = 0.05;
inline constexpr double vol_exp_tol = 0.05;
inline constexpr double default_tail_fraction = 0.25;

struct ExponentFit {
    double exponent = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    double r_min = 0.0;
    double r_max = 0.0;
};

/// Least-squares slope of log v against log r over the last tail_fraction of
/// the samples. Throws NonpositiveData if v or r is not positive on the tail,
/// InvalidParameters if tail_fraction is outside (0, 0.5] or fewer than three
/// samples remain.
ExponentFit fit_exponent(std::span<const double> r, std::span<const double> v, double tail_fraction = default_tail_fraction);

struct ProfileExponents {
    double tail_fraction = 0.0;
    ExponentFit omega;
    ExponentFit f;  // of |f - f(tip)|
    ExponentFit volume;
};

ProfileExponents fit_profile_exponents(const RadialProfile& prof, double tail_fraction = default_tail_fraction);

struct AsymptoticsReport {
    AsymptoticPrediction predicted;
    ProfileExponents fitted;
    std::vector<ProfileExponents> sensitivity;  // tail fractions 0.15, 0.25, 0.35
    double r_end = 0.0;
    bool omega_ok = false;
    bool f_ok = false;
    bool volume_ok = false;

    bool pass() const { return omega_ok && f_ok && volume_ok; }
};

/// Fitted against predicted exponents at the module tolerances.
AsymptoticsReport analyze_profile(const RadialProfile& prof, double tail_fraction = default_tail_fraction);

struct LimitDiagnostics {
    bool cigar = false;
    double t_end = 0.0;
    double y_over_t = 0.0;
    double y_over_t_expected = 0.0;
    double y_slope = 0.0;  // secant dy/dt over the tail
    // Power-law regimes only.
    double t_x = 0.0;
    double t_x_expected = 0.0;
    double x_y = 0.0;
    double x_y_expected = 0.0;
    // Cigar only: ln x / t^2 against -(n - 2)/2; NaN when x underflows before t = 50.
    double log_x_over_t2 = 0.0;
    double log_x_over_t2_expected = 0.0;
};

/// Tail estimates of the limits of y/t, t x and x y along a steady trajectory.
/// Throws TailTooShort when the samples end before t = 50.
LimitDiagnostics limit_diagnostics(const PhaseSamples& traj, const SolitonParams& p);

inline constexpr double min_diagnostic_time = 50.0;

/// Phase variables x = omega', y = -omega f' of a sampled profile, with phase
/// time integrated from the first regular sample by the trapezoidal rule.
PhaseSamples phase_samples_from_profile(const RadialProfile& prof);

struct CigarReport {
    double tail_mean = 0.0;
    double tail_oscillation = 0.0;  // (max - min) / mean of omega over the tail
    ExponentFit f;
    ExponentFit volume;
    bool omega_bounded = false;
    bool f_ok = false;
    bool volume_ok = false;

    bool pass() const { return omega_bounded && f_ok && volume_ok; }
};

/// Requires rho = 1/m (OutOfRegime).
CigarReport cigar_checks(const RadialProfile& prof, double tail_fraction = default_tail_fraction);

}  // namespace rsl
