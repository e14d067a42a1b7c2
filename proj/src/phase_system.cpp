#include "rsl/phase_system.hpp"

#include <cmath>

#include "rsl/errors.hpp"

namespace rsl {

namespace {

void require_not_schouten(const SolitonParams& p, const char* op) {
    if (p.is_schouten()) throw SchoutenSingular(op);
}

void require_steady(const SolitonParams& p) {
    if (p.lambda != 0.0) throw NotSteady("steady system requires lambda = 0");
    if (p.kappa != 1) throw NotSteady("steady system requires kappa = 1");
}

}  // namespace

SystemCoefficients coefficients(const SolitonParams& p) {
    const double m = p.m();
    const double rho = p.rho;
    return SystemCoefficients{
        .d = 1.0 - 2.0 * m * rho,
        .a = (m - 1.0) * (1.0 - m * rho),
        .b = m * (m - 1.0) * (1.0 - (m + 1.0) * rho),
        .c = 1.0 + m - 4.0 * m * rho,
        .lam_x = -1.0,
        .lam_y = m - 1.0,
    };
}

PhaseRates scaled_vector_field(const SolitonParams& p, const PhaseState& s) {
    const auto k = coefficients(p);
    // Factored for kappa = 1 so that the steady field is reproduced bit for bit.
    const double curv = p.kappa == 1 ? (1.0 - s.x) * (1.0 + s.x) : p.kappa - s.x * s.x;
    const double xy = s.x * s.y;
    const double lw2 = p.lambda * s.omega * s.omega;
    return PhaseRates{
        .dx = k.a * curv - xy + k.lam_x * lw2,
        .dy = -k.b * curv + k.c * xy + k.lam_y * lw2,
        .domega = s.x * s.omega,
    };
}

PhaseRates vector_field(const SolitonParams& p, const PhaseState& s) {
    require_not_schouten(p, "vector_field");
    auto r = scaled_vector_field(p, s);
    const double d = p.schouten_factor();
    r.dx /= d;
    r.dy /= d;
    return r;
}

PhaseRates steady_vector_field(const SolitonParams& p, const PhaseState& s) {
    require_steady(p);
    require_not_schouten(p, "steady_vector_field");
    const auto k = coefficients(p);
    const double curv = (1.0 - s.x) * (1.0 + s.x);
    const double xy = s.x * s.y;
    return PhaseRates{
        .dx = (k.a * curv - xy) / k.d,
        .dy = (-k.b * curv + k.c * xy) / k.d,
        .domega = s.x * s.omega,
    };
}

double scalar_field_F(const SolitonParams& p, double x, double y) {
    const auto k = coefficients(p);
    const double curv = (1.0 - x) * (1.0 + x);
    const double num = k.a * curv - x * y;
    const double den = -k.b * curv + k.c * x * y;
    if (den == 0.0) throw DenominatorZero(x, y);
    return num / den;
}

double scalar_field_G(const SolitonParams& p, double x, double z) {
    const auto k = coefficients(p);
    const double curv = (1.0 - x) * (1.0 + x);
    const double num = k.a * curv + x * z;
    const double den = k.b * curv + k.c * x * z;
    if (den == 0.0) throw DenominatorZero(x, -z);
    return num / den;
}

double nullcline_h(const SolitonParams& p, double y) {
    const double m = p.m();
    if (!(p.rho < 1.0 / m) || p.is_cigar()) throw OutOfRegime("nullcline h requires rho < 1/(n-1)");
    if (y < 0.0) throw OutOfRange("nullcline h requires y >= 0");
    const double a = coefficients(p).a;
    // Rationalized root of a x^2 + x y - a = 0; no cancellation for large y.
    return 2.0 * a / (y + std::hypot(y, 2.0 * a));
}

double nullcline_k(const SolitonParams& p, double z) {
    const double m = p.m();
    if (!(p.rho > 1.0 / m) && !p.is_cigar()) throw OutOfRegime("nullcline k requires rho >= 1/(n-1)");
    if (z < 0.0) throw OutOfRange("nullcline k requires z >= 0");
    if (p.is_cigar()) return z > 0.0 ? 0.0 : 1.0;
    const double a = coefficients(p).a;  // negative here
    // Root of a x^2 - x z - a = 0 lying in (0, 1]; the other root exceeds 1.
    return -2.0 * a / (z + std::hypot(z, 2.0 * a));
}

std::vector<Equilibrium> equilibria(const SolitonParams& p) {
    p.validate();
    require_not_schouten(p, "equilibria");
    std::vector<Equilibrium> out;

    // omega = 0: the (x, y) equations force kappa = x^2 and x y = 0, since the
    // determinant (m-1)(1-2m rho)^2 of the linear system in (kappa - x^2, x y)
    // is nonzero.
    if (p.kappa == 1) {
        out.push_back({PhaseState{1.0, 0.0, 0.0, 0.0}, false, false});
        out.push_back({PhaseState{-1.0, 0.0, 0.0, 0.0}, false, false});
    } else if (p.kappa == 0) {
        out.push_back({PhaseState{0.0, 0.0, 0.0, 0.0}, true, false});
    }

    // omega > 0: x = 0, then kappa (m-1)(2 m rho - 1) = 0 and lambda omega^2 = a kappa.
    if (p.kappa == 0 && p.lambda == 0.0) {
        out.push_back({PhaseState{0.0, 0.0, 1.0, 0.0}, true, true});
    }
    return out;
}

Jacobian2 steady_jacobian_at_p(const SolitonParams& p) {
    require_steady(p);
    require_not_schouten(p, "steady_jacobian_at_p");
    const auto k = coefficients(p);
    return Jacobian2{
        .xx = -2.0 * k.a / k.d,
        .xy = -1.0 / k.d,
        .yx = 2.0 * k.b / k.d,
        .yy = k.c / k.d,
    };
}

}  // namespace rsl
