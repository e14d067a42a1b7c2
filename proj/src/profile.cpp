#include "rsl/profile.hpp"

#include <cmath>

#include "rsl/errors.hpp"

namespace rsl {

const char* to_string(Normalization n) {
    return n == Normalization::raw ? "raw" : "R_at_origin_one";
}

Normalization normalization_from_string(const std::string& s) {
    if (s == "raw") return Normalization::raw;
    if (s == "R_at_origin_one") return Normalization::R_at_origin_one;
    throw InvalidParameters("unknown normalization '" + s + "'");
}

void RadialProfile::reserve(std::size_t n) {
    for (auto* v : {&r, &omega, &omega_p, &omega_pp, &f, &f_p}) v->reserve(n);
}

void RadialProfile::push_back(double r_, double omega_, double omega_p_, double omega_pp_, double f_, double f_p_) {
    r.push_back(r_);
    omega.push_back(omega_);
    omega_p.push_back(omega_p_);
    omega_pp.push_back(omega_pp_);
    f.push_back(f_);
    f_p.push_back(f_p_);
}

void RadialProfile::validate() const {
    params.validate();
    const std::size_t n = r.size();
    for (const auto* v : {&omega, &omega_p, &omega_pp, &f, &f_p})
        if (v->size() != n) throw InvalidParameters("profile arrays have different lengths");
    if (n == 0) throw InvalidParameters("profile has no samples");
    for (const auto* v : {&r, &omega, &omega_p, &omega_pp, &f, &f_p})
        for (double x : *v)
            if (!std::isfinite(x)) throw InvalidParameters("profile contains a non-finite value");
    for (std::size_t i = 1; i < n; ++i)
        if (!(r[i] > r[i - 1])) throw InvalidParameters("profile radii are not strictly increasing");
}

RadialProfile scale_profile(const RadialProfile& prof, double c) {
    if (!(c > 0.0)) throw InvalidParameters("homothety factor must be positive");
    RadialProfile out;
    out.params = prof.params;
    out.params.lambda = prof.params.lambda / (c * c);
    out.normalization = prof.normalization;
    out.reserve(prof.size());
    for (std::size_t i = 0; i < prof.size(); ++i)
        out.push_back(c * prof.r[i], c * prof.omega[i], prof.omega_p[i], prof.omega_pp[i] / c, prof.f[i],
                      prof.f_p[i] / c);
    return out;
}

}  // namespace rsl
