#include "rsl/potential_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rsl/errors.hpp"
#include "rsl/finite_difference.hpp"
#include "rsl/warped_geometry.hpp"

namespace rsl {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double precision_floor = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

double relative(double diff, double scale) { return std::abs(diff) / std::max(scale, precision_floor); }

struct Triple {
    double nd1, nd2, nd3;
};

Triple nd_triple(const CoefficientSet& c, int n, double f) {
    const auto v = c.evaluate(f, n);
    const double al = v.alpha.value(), al1 = v.alpha.derivative(1), al2 = v.alpha.derivative(2);
    const double be = v.beta.value(), be1 = v.beta.derivative(1);
    const double ga = v.gamma.value();
    const double nd1 = al;
    const double nd2 = al * al - al1 - be;
    double nd3 = nan;
    if (nd2 != 0.0 && nd1 != 0.0) {
        const double first = (2.0 * al * al1 - al2 - be1) / nd2 + 2.0 * be / al;
        const double factor = (1.0 - 2.0 * (n - 1.0) * ga) / 2.0;
        nd3 = first * factor - ((1.0 - n * ga) * (al1 + be) + al * al * ga) / al;
    }
    return {nd1, nd2, nd3};
}

bool vanishes(double v) { return !(std::abs(v) > nondegeneracy_threshold); }

}  // namespace

CoefficientValues CoefficientSet::evaluate(double f, int n) const {
    const Jet x = Jet::variable(f);
    CoefficientValues out;
    try {
        out.alpha = alpha(x, n);
        out.beta = beta(x, n);
        out.gamma = gamma(x, n);
        out.zeta = zeta(x, n);
        out.eta = eta(x, n);
    } catch (const std::exception& e) {
        throw EvaluationError(family_name + ": coefficient evaluation failed at f = " + std::to_string(f) + ": " +
                              e.what());
    }
    const auto finite = [](const Jet& j, int upto) {
        for (int k = 0; k <= std::min(upto, j.order()); ++k)
            if (!std::isfinite(j.derivative(k))) return false;
        return true;
    };
    if (!finite(out.alpha, 2) || !finite(out.beta, 1) || !finite(out.gamma, 0) || !finite(out.zeta, 0) ||
        !finite(out.eta, 0))
        throw EvaluationError(family_name + ": non-finite coefficient at f = " + std::to_string(f));
    return out;
}

std::vector<CoefficientSet> family_registry(const RegistryParams& params) {
    const double lam = params.lambda, mu = params.mu, rho = params.rho;
    const auto constant = [](double c) { return Coefficient([c](const Jet&, int) { return Jet(c); }); };
    std::vector<CoefficientSet> out;
    out.push_back({"gradient_ricci_soliton", constant(1.0), constant(0.0), constant(0.0), constant(lam),
                   constant(0.0)});
    out.push_back({"rho_einstein", constant(1.0), constant(0.0), constant(rho), constant(lam), constant(0.0)});
    out.push_back({"quasi_einstein", constant(1.0), constant(mu), constant(0.0), constant(lam), constant(0.0)});
    out.push_back({"fischer_marsden", [](const Jet& f, int) { return -1.0 / f; }, constant(0.0),
                   [](const Jet&, int n) { return Jet(1.0 / (n - 1.0)); }, constant(0.0), constant(0.0)});

    const auto a = params.a, b = params.b;
    out.push_back({"scalar_tensor_action",
                   [a](const Jet& f, int) {
                       const Jet av = a(f);
                       return -av.derive() / av;
                   },
                   [a, b](const Jet& f, int) {
                       const Jet av = a(f);
                       return (av.derive().derive() - b(f)) / av;
                   },
                   [a, b](const Jet& f, int n) {
                       const Jet av = a(f), bv = b(f);
                       const Jet a1 = av.derive(), a2 = a1.derive(), b1 = bv.derive();
                       const Jet num = a1 * b1 - 2.0 * a2 * bv + a1 * a1 * (bv / av);
                       const Jet den = 2.0 * (n - 2.0) * bv * bv + 2.0 * (n - 1.0) * a1 * b1 - 4.0 * (n - 1.0) * a2 * bv;
                       return num / den;
                   },
                   constant(0.0), constant(0.0)});

    const auto w = params.omega;
    out.push_back({"bergmann_wagoner_nordtvedt", [](const Jet& f, int) { return -1.0 / f; },
                   [w](const Jet& f, int) { return w(f) / (f * f); },
                   [w](const Jet& f, int n) {
                       const Jet wv = w(f), w1 = wv.derive();
                       return -(w1 * f) / ((n - 2.0) * (3.0 + 2.0 * wv) * wv - 2.0 * (n - 1.0) * w1 * f);
                   },
                   constant(0.0), constant(0.0)});
    return out;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::nondegenerate: return "nondegenerate";
        case Verdict::degenerate: return "degenerate";
        case Verdict::boundary: return "boundary";
    }
    return "unknown";
}

Nondegeneracy nondegeneracy_check(const CoefficientSet& c, int n, double f_value) {
    const auto here = nd_triple(c, n, f_value);
    Nondegeneracy out;
    out.nd1 = here.nd1;
    out.nd2 = here.nd2;
    out.nd3 = here.nd3;

    bool zero1 = true, zero2 = true, zero3 = true;
    std::size_t evaluated = 0;
    const double scale = std::max(1.0, std::abs(f_value));
    for (double s : {0.0, -0.05, 0.05, -0.1, 0.1, -0.2, 0.2}) {
        const double fp = f_value + s * scale;
        Triple t;
        try {
            t = nd_triple(c, n, fp);
        } catch (const EvaluationError&) {
            continue;
        }
        ++evaluated;
        out.probes.push_back(fp);
        zero1 = zero1 && vanishes(t.nd1);
        zero2 = zero2 && vanishes(t.nd2);
        zero3 = zero3 && vanishes(t.nd3);
    }
    if (evaluated > 0 && (zero1 || zero2 || zero3))
        out.verdict = Verdict::degenerate;
    else if (!vanishes(here.nd1) && !vanishes(here.nd2) && !vanishes(here.nd3))
        out.verdict = Verdict::nondegenerate;
    else
        out.verdict = Verdict::boundary;
    return out;
}

GenericityReport generic_nondegeneracy(const std::string& family_name, std::size_t samples, std::uint64_t seed,
                                       const ProbeBox& box) {
    if (box.dims.empty()) throw InvalidParameters("probe box has no dimensions");
    GenericityReport rep;
    rep.family_name = family_name;
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> pick_dim(0, box.dims.size() - 1);
    std::uniform_real_distribution<double> pick_f(box.f_lo, box.f_hi);
    std::uniform_real_distribution<double> pick_c(box.coeff_lo, box.coeff_hi);
    for (std::size_t k = 0; k < samples; ++k) {
        const int n = box.dims[pick_dim(gen)];
        const double f = pick_f(gen);
        const double c0 = pick_c(gen), c1 = pick_c(gen), ca = pick_c(gen), cb = pick_c(gen);
        RegistryParams params;
        params.lambda = pick_c(gen);
        params.mu = pick_c(gen);
        params.rho = pick_c(gen);
        params.omega = [c0, c1](const Jet& x) { return c0 + c1 * x; };
        params.a = [ca](const Jet& x) { return x * x + ca; };
        params.b = [cb](const Jet& x) { return cb * x; };
        const auto reg = family_registry(params);
        const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& c) { return c.family_name == family_name; });
        if (it == reg.end()) throw InvalidParameters("unknown family " + family_name);
        ++rep.samples;
        switch (nondegeneracy_check(*it, n, f).verdict) {
            case Verdict::nondegenerate: ++rep.nondegenerate; break;
            case Verdict::degenerate: ++rep.degenerate; break;
            case Verdict::boundary: ++rep.boundary; break;
        }
    }
    return rep;
}

RectifiabilityReport rectifiability_witness(const RadialProfile& prof) {
    const auto curv = curvature(prof);
    const auto& p = prof.params;
    const double m = p.m();
    const double D = p.schouten_factor();
    std::vector<double> r(curv.sample.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = prof.r[curv.sample[k]];
    if (r.size() < 5) throw TipSingular("too few regular samples");
    const auto dR = differentiate(r, curv.R, 1);
    const auto fpp = differentiate(prof.r, prof.f_p, 1);

    RectifiabilityReport rep;
    for (std::size_t k = 2; k + 2 < r.size(); ++k) {
        const std::size_t i = curv.sample[k];
        const double fp = prof.f_p[i];
        const double R = curv.R[k];
        const double ric_norm = std::sqrt(curv.Ric_rr[k] * curv.Ric_rr[k] + m * curv.Ric_sph[k] * curv.Ric_sph[k]);

        const double lhs = D * dR[k];
        const double rhs = 2.0 * curv.Ric_rr[k] * fp;
        const double s = std::max({std::abs(lhs), std::abs(rhs), 1e-6 * ric_norm * std::abs(fp)});

        const double c_lhs = 2.0 * fp * fpp[i];
        const double c_rhs = 2.0 * fp * (p.rho * R + p.lambda) - lhs;
        const double cs = std::max({std::abs(c_lhs), std::abs(2.0 * fp * p.rho * R), std::abs(2.0 * fp * p.lambda),
                                    std::abs(lhs)});

        rep.sample.push_back(i);
        rep.gradient_lhs.push_back(lhs);
        rep.gradient_rhs.push_back(rhs);
        rep.gradient_dev.push_back(relative(lhs - rhs, s));
        rep.chain_lhs.push_back(c_lhs);
        rep.chain_rhs.push_back(c_rhs);
        rep.chain_dev.push_back(relative(c_lhs - c_rhs, cs));
        rep.sup_gradient_dev = std::max(rep.sup_gradient_dev, rep.gradient_dev.back());
        rep.sup_chain_dev = std::max(rep.sup_chain_dev, rep.chain_dev.back());
        rep.sup_abs_gradient_lhs = std::max(rep.sup_abs_gradient_lhs, std::abs(lhs));
        rep.sup_abs_gradient_rhs = std::max(rep.sup_abs_gradient_rhs, std::abs(rhs));
        rep.sup_abs_gradient_diff = std::max(rep.sup_abs_gradient_diff, std::abs(lhs - rhs));
    }
    return rep;
}

}  // namespace rsl
