#pragma once

#include <vector>

#include "rsl/params.hpp"

namespace rsl {

/// Point of the first-order system: x = omega', y = -omega f', dt = dr / omega.
struct PhaseState {
    double x = 0.0;
    double y = 0.0;
    double omega = 0.0;
    double t = 0.0;
};

struct PhaseRates {
    double dx = 0.0;
    double dy = 0.0;
    double domega = 0.0;
};

// Constants of the reduced system, all functions of (n, rho) only.
struct SystemCoefficients {
    double d;       // 1 - 2 m rho
    double a;       // (m-1)(1 - m rho)
    double b;       // m (m-1)(1 - (m+1) rho)
    double c;       // 1 + m - 4 m rho
    double lam_x;   // coefficient of lambda omega^2 in D dx
    double lam_y;   // coefficient of lambda omega^2 in D dy
};

SystemCoefficients coefficients(const SolitonParams& p);

/// Right-hand side multiplied through by (1 - 2 m rho). Defined for every rho,
/// including the Schouten value where the system itself is singular.
PhaseRates scaled_vector_field(const SolitonParams& p, const PhaseState& s);

/// Throws SchoutenSingular at rho = 1/(2m).
PhaseRates vector_field(const SolitonParams& p, const PhaseState& s);

/// Requires lambda = 0 and kappa = 1 (NotSteady otherwise).
PhaseRates steady_vector_field(const SolitonParams& p, const PhaseState& s);

/// dx/dy along a steady trajectory. Throws DenominatorZero.
double scalar_field_F(const SolitonParams& p, double x, double y);

/// dx/dz along a steady trajectory, z = -y. Throws DenominatorZero.
double scalar_field_G(const SolitonParams& p, double x, double z);

/// x-nullcline of the steady system for rho < 1/m, y >= 0.
double nullcline_h(const SolitonParams& p, double y);

/// x-nullcline of the steady system for rho >= 1/m, z >= 0.
double nullcline_k(const SolitonParams& p, double z);

struct Equilibrium {
    PhaseState state;
    // Continua of equilibria are returned as one representative with the
    // free coordinates marked.
    bool free_y = false;
    bool free_omega = false;
};

/// All zeros of vector_field with omega >= 0, by case analysis on omega = 0
/// and x = 0. Throws SchoutenSingular.
std::vector<Equilibrium> equilibria(const SolitonParams& p);

/// Jacobian of the steady (x, y) subsystem at P = (1, 0), row-major.
struct Jacobian2 {
    double xx, xy, yx, yy;
};

Jacobian2 steady_jacobian_at_p(const SolitonParams& p);

}  // namespace rsl
