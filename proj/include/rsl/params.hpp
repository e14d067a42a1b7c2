#pragma once

#include <string>

namespace rsl {

/// Parameters of Ric + Hess f = rho R g + lambda g on a warped product
/// dr^2 + omega(r)^2 g_can, where g_can has constant curvature kappa.
struct SolitonParams {
    int n = 3;
    double rho = 0.0;
    double lambda = 0.0;
    int kappa = 1;

    int m() const { return n - 1; }

    /// Throws InvalidParameters unless n >= 3 and kappa is -1, 0 or 1.
    void validate() const;

    /// 1 - 2 m rho, the factor multiplying the derivatives of the phase system.
    double schouten_factor() const { return 1.0 - 2.0 * m() * rho; }

    bool is_schouten() const;   // rho == 1/(2m)
    bool is_cigar() const;      // rho == 1/m
    bool is_steady() const { return lambda == 0.0 && kappa == 1; }

    std::string describe() const;

    friend bool operator==(const SolitonParams&, const SolitonParams&) = default;
};

/// Relative comparison used for the distinguished rho values.
bool rho_equals(double rho, double target);

/// Steady regimes with positive sectional curvature.
enum class SteadyRegime {
    below_schouten,   ///< rho < 1/(2m); y increases from 0
    cigar_or_above,   ///< rho >= 1/m; y decreases from 0
    schouten,         ///< rho == 1/(2m)
    forbidden         ///< 1/(2m) < rho < 1/m, no complete solution
};

SteadyRegime classify_steady(const SolitonParams& p);

const char* to_string(SteadyRegime r);

}  // namespace rsl
