#include "rsl/params.hpp"

#include <cmath>
#include <sstream>

#include "rsl/errors.hpp"

namespace rsl {

bool rho_equals(double rho, double target) {
    return std::abs(rho - target) <= 1e-12 * std::max(1.0, std::abs(target));
}

void SolitonParams::validate() const {
    if (n < 3) throw InvalidParameters("dimension n must be >= 3, got " + std::to_string(n));
    if (kappa < -1 || kappa > 1) throw InvalidParameters("kappa must be -1, 0 or 1");
    if (!std::isfinite(rho) || !std::isfinite(lambda)) throw InvalidParameters("rho and lambda must be finite");
}

bool SolitonParams::is_schouten() const { return rho_equals(rho, 1.0 / (2.0 * m())); }

bool SolitonParams::is_cigar() const { return rho_equals(rho, 1.0 / m()); }

std::string SolitonParams::describe() const {
    std::ostringstream os;
    os << "n=" << n << " rho=" << rho << " lambda=" << lambda << " kappa=" << kappa;
    return os.str();
}

SteadyRegime classify_steady(const SolitonParams& p) {
    if (p.is_schouten()) return SteadyRegime::schouten;
    if (p.is_cigar()) return SteadyRegime::cigar_or_above;
    const double m = p.m();
    if (p.rho < 1.0 / (2.0 * m)) return SteadyRegime::below_schouten;
    if (p.rho > 1.0 / m) return SteadyRegime::cigar_or_above;
    return SteadyRegime::forbidden;
}

const char* to_string(SteadyRegime r) {
    switch (r) {
        case SteadyRegime::below_schouten: return "below_schouten";
        case SteadyRegime::cigar_or_above: return "cigar_or_above";
        case SteadyRegime::schouten: return "schouten";
        case SteadyRegime::forbidden: return "forbidden";
    }
    return "unknown";
}

}  // namespace rsl
