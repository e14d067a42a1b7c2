#include "rsl/warped_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "rsl/errors.hpp"
#include "rsl/finite_difference.hpp"

namespace rsl {

namespace {

double max_abs(std::initializer_list<double> terms) {
    double s = 0.0;
    for (double t : terms) s = std::max(s, std::abs(t));
    return s;
}

// Subnormal terms carry no relative precision, so scales are floored where it runs out.
constexpr double precision_floor = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

double relative(double diff, double scale) { return std::abs(diff) / std::max(scale, precision_floor); }

// Index of the first sample with omega above the tip threshold; the tip can
// only sit at the start of a profile.
std::size_t first_regular(const RadialProfile& prof) {
    std::size_t i = 0;
    while (i < prof.size() && !(prof.omega[i] > tip_omega_threshold)) ++i;
    return i;
}

struct PointCurvature {
    double R, Ric_rr, Ric_sph, K_rad, K_sph;
};

PointCurvature point_curvature(const SolitonParams& p, double w, double wp, double wpp) {
    const double m = p.m();
    const double K_rad = -wpp / w;
    const double K_sph = (p.kappa - wp * wp) / (w * w);
    const double Ric_rr = m * K_rad;
    const double Ric_sph = K_rad + (m - 1.0) * K_sph;
    const double R = -2.0 * m * wpp / w + m * (m - 1.0) * (p.kappa - wp * wp) / (w * w);
    return {R, Ric_rr, Ric_sph, K_rad, K_sph};
}

}  // namespace

CurvatureReport curvature(const RadialProfile& prof) {
    prof.validate();
    const auto& p = prof.params;
    const double m = p.m();
    CurvatureReport rep;
    const std::size_t n = prof.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = prof.omega[i];
        if (!(w > tip_omega_threshold)) {
            rep.tip_singular.push_back(i);
            continue;
        }
        const double wp = prof.omega_p[i];
        const double wpp = prof.omega_pp[i];
        const auto pc = point_curvature(p, w, wp, wpp);
        rep.sample.push_back(i);
        rep.R.push_back(pc.R);
        rep.Ric_rr.push_back(pc.Ric_rr);
        rep.Ric_sph.push_back(pc.Ric_sph);
        rep.K_rad.push_back(pc.K_rad);
        rep.K_sph.push_back(pc.K_sph);
        rep.H.push_back(m * wp / w);
        rep.R_sigma.push_back(m * (m - 1.0) * p.kappa / (w * w));
    }
    if (rep.sample.empty()) throw TipSingular("every sample lies on the tip");

    // Residuals need f''; fill them where the centred stencil exists.
    const auto res = soliton_residual(prof);
    rep.residual_1.assign(rep.sample.size(), std::numeric_limits<double>::quiet_NaN());
    rep.residual_2.assign(rep.sample.size(), std::numeric_limits<double>::quiet_NaN());
    std::size_t k = 0;
    for (std::size_t j = 0; j < res.sample.size(); ++j) {
        while (k < rep.sample.size() && rep.sample[k] < res.sample[j]) ++k;
        if (k < rep.sample.size() && rep.sample[k] == res.sample[j]) {
            rep.residual_1[k] = res.res1[j];
            rep.residual_2[k] = res.res2[j];
        }
    }
    return rep;
}

HessianLaplacian hessian_laplacian(const RadialProfile& prof) {
    prof.validate();
    const double m = prof.params.m();
    const auto fpp = differentiate(prof.r, prof.f_p, 1);
    HessianLaplacian out;
    for (std::size_t i = first_regular(prof); i < prof.size(); ++i) {
        out.sample.push_back(i);
        out.f_pp.push_back(fpp[i]);
        out.laplacian.push_back(fpp[i] + m * prof.omega_p[i] / prof.omega[i] * prof.f_p[i]);
    }
    if (out.sample.empty()) throw TipSingular("every sample lies on the tip");
    return out;
}

ResidualReport soliton_residual(const RadialProfile& prof) {
    prof.validate();
    const auto& p = prof.params;
    const double m = p.m();
    const double rho = p.rho;
    const double lam = p.lambda;
    const double kap = p.kappa;
    const auto fpp = differentiate(prof.r, prof.f_p, 1);
    ResidualReport rep;
    const std::size_t n = prof.size();
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double w = prof.omega[i], wp = prof.omega_p[i], wpp = prof.omega_pp[i];
        const double fp = prof.f_p[i];
        const double w2 = w * w;
        // Radial component times omega^2.
        const double t1[] = {fpp[i] * w2, -(m - 2.0 * m * rho) * w * wpp, m * (m - 1.0) * rho * wp * wp, -lam * w2,
                             -m * (m - 1.0) * rho * kap};
        // Fibre component.
        const double a = (m - 1.0) * (1.0 - m * rho);
        const double t2[] = {fp * w * wp, -(1.0 - 2.0 * m * rho) * w * wpp, -a * wp * wp, -lam * w2, a * kap};
        double r1 = 0.0, s1 = 0.0, r2 = 0.0, s2 = 0.0;
        for (double t : t1) r1 += t, s1 = std::max(s1, std::abs(t));
        for (double t : t2) r2 += t, s2 = std::max(s2, std::abs(t));
        rep.sample.push_back(i);
        rep.res1.push_back(r1);
        rep.res2.push_back(r2);
        rep.rel1.push_back(relative(r1, s1));
        rep.rel2.push_back(relative(r2, s2));
        const double worst = std::max(rep.rel1.back(), rep.rel2.back());
        if (worst > rep.sup()) rep.worst_sample = i;
        rep.sup_rel1 = std::max(rep.sup_rel1, rep.rel1.back());
        rep.sup_rel2 = std::max(rep.sup_rel2, rep.rel2.back());
    }
    return rep;
}

IdentityReport identity_checks(const RadialProfile& prof) {
    prof.validate();
    const auto& p = prof.params;
    const double m = p.m();
    const double nd = p.n;
    const double rho = p.rho;
    const double lam = p.lambda;
    const double D = p.schouten_factor();

    const std::size_t i0 = first_regular(prof);
    const std::size_t n = prof.size();
    if (n < i0 + 5) throw TipSingular("too few regular samples for identity checks");
    const std::span<const double> r(prof.r.data() + i0, n - i0);

    std::vector<double> R(r.size()), Ric_rr(r.size()), Ric_norm(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        const std::size_t i = i0 + k;
        const auto pc = point_curvature(p, prof.omega[i], prof.omega_p[i], prof.omega_pp[i]);
        R[k] = pc.R;
        Ric_rr[k] = pc.Ric_rr;
        Ric_norm[k] = std::sqrt(pc.Ric_rr * pc.Ric_rr + m * pc.Ric_sph * pc.Ric_sph);
    }
    const auto dR = differentiate(r, R, 1);
    const auto d2R = differentiate(r, R, 2);
    const auto fpp = differentiate(prof.r, prof.f_p, 1);

    IdentityReport rep;
    rep.schouten = p.is_schouten();
    for (std::size_t k = 2; k + 2 < r.size(); ++k) {
        const std::size_t i = i0 + k;
        const double w = prof.omega[i], wp = prof.omega_p[i], fp = prof.f_p[i];
        const double drift = m * wp / w;

        const double lap_f = fpp[i] + drift * fp;
        const double e1 = lap_f - ((nd * rho - 1.0) * R[k] + nd * lam);
        const double s1 = max_abs({fpp[i], drift * fp, (nd * rho - 1.0) * R[k], nd * lam});

        const double lhs2 = D * dR[k];
        const double rhs2 = 2.0 * Ric_rr[k] * fp;
        // Both sides can decay below rounding while |Ric| |grad f| does not.
        const double s2 = std::max(max_abs({lhs2, rhs2}), 1e-6 * Ric_norm[k] * std::abs(fp));

        const double ric2 = Ric_norm[k] * Ric_norm[k];
        const double lhs3 = D * (d2R[k] + drift * dR[k]);
        const double rhs3 = dR[k] * fp + 2.0 * (rho * R[k] * R[k] - ric2 + lam * R[k]);
        const double s3 = max_abs({D * d2R[k], D * drift * dR[k], dR[k] * fp, 2.0 * rho * R[k] * R[k], 2.0 * ric2,
                                   2.0 * lam * R[k]});

        rep.sample.push_back(i);
        rep.laplacian_dev.push_back(relative(e1, s1));
        rep.gradient_dev.push_back(relative(lhs2 - rhs2, s2));
        rep.divergence_dev.push_back(relative(lhs3 - rhs3, s3));
        rep.sup_laplacian = std::max(rep.sup_laplacian, rep.laplacian_dev.back());
        rep.sup_gradient = std::max(rep.sup_gradient, rep.gradient_dev.back());
        rep.sup_divergence = std::max(rep.sup_divergence, rep.divergence_dev.back());
        if (rep.schouten) {
            rep.sup_schouten_radial =
                std::max(rep.sup_schouten_radial, relative(Ric_rr[k] * fp, Ric_norm[k] * std::abs(fp)));
        }
    }
    return rep;
}

LevelSetReport level_set_geometry(const RadialProfile& prof) {
    prof.validate();
    const auto& p = prof.params;
    const double m = p.m();
    LevelSetReport rep;
    for (std::size_t i = first_regular(prof); i < prof.size(); ++i) {
        if (prof.f_p[i] == 0.0) {
            rep.critical.push_back(i);
            continue;
        }
        const double w = prof.omega[i], wp = prof.omega_p[i], wpp = prof.omega_pp[i];
        const auto pc = point_curvature(p, w, wp, wpp);
        const double H = m * wp / w;
        const double dH = m * (wpp / w - (wp / w) * (wp / w));
        const double h2_direct = m * (wp / w) * (wp / w);
        const double h2_riccati = -dH - pc.Ric_rr;
        const double gauss = pc.R - 2.0 * pc.Ric_rr - h2_riccati + H * H;
        const double direct = m * (m - 1.0) * p.kappa / (w * w);
        rep.sample.push_back(i);
        rep.H.push_back(H);
        rep.h_norm2.push_back(h2_direct);
        rep.h_norm2_riccati.push_back(h2_riccati);
        rep.R_sigma_gauss.push_back(gauss);
        rep.R_sigma_direct.push_back(direct);
        rep.sup_gauss_dev = std::max(rep.sup_gauss_dev, std::abs(gauss - direct) / (1.0 + std::abs(direct)));
    }
    if (rep.sample.empty()) throw CriticalLevel("f' vanishes at every regular sample");
    return rep;
}

double sphere_area(int m) {
    const double k = 0.5 * (m + 1);
    return 2.0 * std::pow(std::numbers::pi, k) / std::tgamma(k);
}

namespace {

// Integral of omega^m from 0 to the first sample, for a profile whose first
// sample lies a distance r0 from the tip with omega linear there.
double tip_contribution(const RadialProfile& prof, int m) {
    const double r0 = prof.r.front();
    if (r0 <= 0.0) return 0.0;
    return std::pow(prof.omega.front(), m) * r0 / (m + 1);
}

}  // namespace

std::vector<double> ball_volumes(const RadialProfile& prof) {
    prof.validate();
    const int m = prof.params.m();
    const double area = sphere_area(m);
    std::vector<double> out(prof.size());
    double acc = tip_contribution(prof, m);
    out[0] = area * acc;
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
        const double h = prof.r[i + 1] - prof.r[i];
        const double g0 = std::pow(prof.omega[i], m), g1 = std::pow(prof.omega[i + 1], m);
        const double d0 = m * std::pow(prof.omega[i], m - 1) * prof.omega_p[i];
        const double d1 = m * std::pow(prof.omega[i + 1], m - 1) * prof.omega_p[i + 1];
        acc += 0.5 * h * (g0 + g1) + h * h / 12.0 * (d0 - d1);
        out[i + 1] = area * acc;
    }
    return out;
}

double ball_volume(const RadialProfile& prof, double r) {
    prof.validate();
    const int m = prof.params.m();
    if (r < 0.0 || r > prof.r.back()) throw OutOfRange("ball radius outside the profile range");
    if (r < prof.r.front()) {
        if (prof.r.front() <= 0.0) return 0.0;
        // omega ~ (omega_0 / r_0) s inside the first interval.
        const double slope = prof.omega.front() / prof.r.front();
        return sphere_area(m) * std::pow(slope, m) * std::pow(r, m + 1) / (m + 1);
    }
    const auto vols = ball_volumes(prof);
    auto it = std::upper_bound(prof.r.begin(), prof.r.end(), r);
    std::size_t k = static_cast<std::size_t>(std::distance(prof.r.begin(), it)) - 1;
    if (k + 1 >= prof.size()) return vols.back();
    // Integrate the cubic Hermite interpolant of omega^m over [r_k, r].
    const double h = prof.r[k + 1] - prof.r[k];
    const double th = (r - prof.r[k]) / h;
    const double g0 = std::pow(prof.omega[k], m), g1 = std::pow(prof.omega[k + 1], m);
    const double d0 = m * std::pow(prof.omega[k], m - 1) * prof.omega_p[k];
    const double d1 = m * std::pow(prof.omega[k + 1], m - 1) * prof.omega_p[k + 1];
    const double t2 = th * th, t3 = t2 * th, t4 = t3 * th;
    const double H00 = th - t3 + 0.5 * t4;
    const double H10 = 0.5 * t2 - 2.0 * t3 / 3.0 + 0.25 * t4;
    const double H01 = t3 - 0.5 * t4;
    const double H11 = -t3 / 3.0 + 0.25 * t4;
    const double partial = h * (H00 * g0 + H10 * h * d0 + H01 * g1 + H11 * h * d1);
    return vols[k] + sphere_area(m) * partial;
}

double tip_scalar_curvature(const RadialProfile& prof) {
    prof.validate();
    const std::size_t i0 = first_regular(prof);
    if (prof.size() < i0 + 3) throw TipSingular("too few regular samples to extrapolate to the tip");
    double rr[3], RR[3];
    for (int k = 0; k < 3; ++k) {
        const std::size_t i = i0 + k;
        rr[k] = prof.r[i];
        RR[k] = point_curvature(prof.params, prof.omega[i], prof.omega_p[i], prof.omega_pp[i]).R;
    }
    // Lagrange form evaluated at r = 0.
    double out = 0.0;
    for (int j = 0; j < 3; ++j) {
        double l = 1.0;
        for (int k = 0; k < 3; ++k)
            if (k != j) l *= (0.0 - rr[k]) / (rr[j] - rr[k]);
        out += l * RR[j];
    }
    return out;
}

}  // namespace rsl
