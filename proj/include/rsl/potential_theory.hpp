#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsl/jet.hpp"
#include "rsl/profile.hpp"

namespace rsl {

/// Coefficient of Ric + alpha Hess f = beta df^2 + gamma R g + zeta g + eta P
/// as a function of f and the dimension n.
using Coefficient = std::function<Jet(const Jet& f, int n)>;

/// Scalar function of f supplied by the caller (a(f), b(f), omega(f)).
using ScalarFunction = std::function<Jet(const Jet& f)>;

struct CoefficientValues {
    Jet alpha, beta, gamma, zeta, eta;
};

struct CoefficientSet {
    std::string family_name;
    Coefficient alpha, beta, gamma, zeta, eta;

    /// Throws EvaluationError if a callback throws or returns a non-finite value.
    CoefficientValues evaluate(double f, int n) const;
};

struct RegistryParams {
    double lambda = 1.0;
    double mu = 0.5;
    double rho = 0.5;
    ScalarFunction a = [](const Jet& f) { return f * f + 1.0; };
    ScalarFunction b = [](const Jet& f) { return f; };
    ScalarFunction omega = [](const Jet& f) { return 1.0 + f; };
};

/// The six example families: gradient Ricci solitons, rho-Einstein solitons,
/// quasi-Einstein metrics, Fischer-Marsden metrics, scalar-tensor actions
/// a(f) R + b(f) |grad f|^2, and the Bergmann-Wagoner-Nordtvedt action.
std::vector<CoefficientSet> family_registry(const RegistryParams& params = {});

enum class Verdict { nondegenerate, degenerate, boundary };

const char* to_string(Verdict v);

inline constexpr double nondegeneracy_threshold = 1e-10;

struct Nondegeneracy {
    double nd1 = 0.0;
    double nd2 = 0.0;
    double nd3 = 0.0;  // NaN when nd2 vanishes
    Verdict verdict = Verdict::boundary;
    std::vector<double> probes;  // f-values used for the identically-zero test
};

/// nd1 = alpha, nd2 = alpha^2 - alpha' - beta, and nd3 assembled term by term
/// from the coefficient jets. Degenerate when one of them vanishes at every
/// probe f(1 + s), s in {0, +-0.05, +-0.1, +-0.2}; nondegenerate when all
/// three exceed the threshold at f_value; boundary otherwise.
Nondegeneracy nondegeneracy_check(const CoefficientSet& c, int n, double f_value);

/// Admissible box for generic sampling of the parameterised families.
struct ProbeBox {
    std::vector<int> dims{3, 4, 5, 6};
    double f_lo = 0.5, f_hi = 3.0;
    double coeff_lo = 0.5, coeff_hi = 2.0;  // range of c0, c1, c, d below
};

struct GenericityReport {
    std::string family_name;
    std::size_t samples = 0;
    std::size_t nondegenerate = 0;
    std::size_t degenerate = 0;
    std::size_t boundary = 0;
    std::uint64_t seed = 0;

    double fraction() const { return samples ? static_cast<double>(nondegenerate) / samples : 0.0; }
};

/// Draws n, f and the free functions omega = c0 + c1 f, a = f^2 + c, b = d f
/// uniformly from the box with a fixed seed and tallies verdicts.
GenericityReport generic_nondegeneracy(const std::string& family_name, std::size_t samples, std::uint64_t seed = 20240517,
                                       const ProbeBox& box = {});

/// Radial consequences of rectifiability on a warped profile: the gradient
/// identity (1 - 2 m rho) R' = 2 Ric_rr f' and the chain
/// 2 f' f'' = 2 f' (rho R + lambda) - (1 - 2 m rho) R'.
struct RectifiabilityReport {
    std::vector<std::size_t> sample;
    std::vector<double> gradient_lhs;
    std::vector<double> gradient_rhs;
    std::vector<double> gradient_dev;  // relative, floored like identity_checks
    std::vector<double> chain_lhs;
    std::vector<double> chain_rhs;
    std::vector<double> chain_dev;
    double sup_gradient_dev = 0.0;
    double sup_chain_dev = 0.0;
    double sup_abs_gradient_lhs = 0.0;
    double sup_abs_gradient_rhs = 0.0;
    double sup_abs_gradient_diff = 0.0;

    bool holds(double tol) const { return sup_gradient_dev < tol && sup_chain_dev < tol; }
};

RectifiabilityReport rectifiability_witness(const RadialProfile& prof);

}  // namespace rsl
