#include "rsl/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "rsl/errors.hpp"
#include "rsl/warped_geometry.hpp"

namespace rsl {

namespace {

void require_steady_existence(const SolitonParams& p) {
    p.validate();
    if (!p.is_steady() || p.kappa != 1) throw NotSteady("asymptotics apply to steady solutions with kappa = 1");
    const auto regime = classify_steady(p);
    if (regime == SteadyRegime::schouten || regime == SteadyRegime::forbidden)
        throw OutOfRegime("no complete steady solution for 1/(2(n-1)) <= rho < 1/(n-1)");
}

std::size_t tail_start(std::size_t size, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 0.5)) throw InvalidParameters("tail fraction must lie in (0, 0.5]");
    const auto count = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(size)));
    if (count < 3) throw InvalidParameters("fewer than three samples in the tail");
    return size - count;
}

}  // namespace

const char* to_string(AsymptoticRegime r) { return r == AsymptoticRegime::cigar ? "cigar" : "power_law"; }

AsymptoticPrediction predicted_exponents(const SolitonParams& p) {
    require_steady_existence(p);
    const double m = p.m();
    AsymptoticPrediction out;
    if (p.is_cigar()) {
        out.regime = AsymptoticRegime::cigar;
        out.omega_exp = 0.0;
        out.f_exp = 2.0;
        out.vol_exp = 1.0;
        return out;
    }
    const double mr = m * p.rho;
    out.omega_exp = (1.0 - mr) / (2.0 - 3.0 * mr);
    out.f_exp = (2.0 - 4.0 * mr) / (2.0 - 3.0 * mr);
    out.vol_exp = m * out.omega_exp + 1.0;
    return out;
}

ExponentFit fit_exponent(std::span<const double> r, std::span<const double> v, double tail_fraction) {
    if (r.size() != v.size()) throw InvalidParameters("r and v differ in length");
    const std::size_t first = tail_start(r.size(), tail_fraction);
    const std::size_t k = r.size() - first;
    std::vector<double> lx, ly;
    lx.reserve(k);
    ly.reserve(k);
    for (std::size_t i = first; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || !(v[i] > 0.0)) throw NonpositiveData("log-log fit needs positive data on the tail");
        lx.push_back(std::log(r[i]));
        ly.push_back(std::log(v[i]));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) mx += lx[i], my += ly[i];
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidParameters("tail radii are not distinct");
    ExponentFit fit;
    fit.exponent = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double e = ly[i] - my - fit.exponent * (lx[i] - mx);
        ssr += e * e;
    }
    fit.std_error = std::sqrt(ssr / static_cast<double>(k - 2) / sxx);
    fit.samples = k;
    fit.r_min = r[first];
    fit.r_max = r.back();
    return fit;
}

ProfileExponents fit_profile_exponents(const RadialProfile& prof, double tail_fraction) {
    prof.validate();
    ProfileExponents out;
    out.tail_fraction = tail_fraction;
    out.omega = fit_exponent(prof.r, prof.omega, tail_fraction);
    std::vector<double> abs_f(prof.f.size());
    std::transform(prof.f.begin(), prof.f.end(), abs_f.begin(), [](double v) { return std::abs(v); });
    out.f = fit_exponent(prof.r, abs_f, tail_fraction);
    out.volume = fit_exponent(prof.r, ball_volumes(prof), tail_fraction);
    return out;
}

AsymptoticsReport analyze_profile(const RadialProfile& prof, double tail_fraction) {
    AsymptoticsReport rep;
    rep.predicted = predicted_exponents(prof.params);
    rep.fitted = fit_profile_exponents(prof, tail_fraction);
    for (double tf : {0.15, 0.25, 0.35}) rep.sensitivity.push_back(fit_profile_exponents(prof, tf));
    rep.r_end = prof.r.back();
    rep.omega_ok = std::abs(rep.fitted.omega.exponent - rep.predicted.omega_exp) < omega_exp_tol;
    rep.f_ok = std::abs(rep.fitted.f.exponent - rep.predicted.f_exp) < f_exp_tol;
    rep.volume_ok = std::abs(rep.fitted.volume.exponent - rep.predicted.vol_exp) < vol_exp_tol;
    return rep;
}

LimitDiagnostics limit_diagnostics(const PhaseSamples& traj, const SolitonParams& p) {
    require_steady_existence(p);
    const std::size_t n = traj.t.size();
    if (n < 4 || traj.t.back() < min_diagnostic_time) throw TailTooShort("trajectory ends before t = 50");
    const double m = p.m();
    const double d = 1.0 - 2.0 * m * p.rho;
    LimitDiagnostics out;
    out.cigar = p.is_cigar();
    const std::size_t last = n - 1;
    const double t = traj.t[last];
    out.t_end = t;
    out.y_over_t = traj.y[last] / t;
    const std::size_t mid = n - std::max<std::size_t>(2, n / 4);
    out.y_slope = (traj.y[last] - traj.y[mid]) / (t - traj.t[mid]);
    if (out.cigar) {
        out.y_over_t_expected = -(p.n - 2.0);
        // x may underflow in sampled profiles; use the last sample where ln x is finite.
        std::size_t k = last;
        while (k > 0 && !std::isfinite(traj.log_x[k])) --k;
        out.log_x_over_t2 = traj.t[k] < min_diagnostic_time ? std::nan("") : traj.log_x[k] / (traj.t[k] * traj.t[k]);
        out.log_x_over_t2_expected = -(p.n - 2.0) / 2.0;
        return out;
    }
    out.y_over_t_expected = (p.n - 2.0) * d;
    out.t_x = t * traj.x[last];
    out.t_x_expected = (1.0 - m * p.rho) / d;
    out.x_y = traj.x[last] * traj.y[last];
    out.x_y_expected = (p.n - 2.0) * (1.0 - m * p.rho);
    return out;
}

PhaseSamples phase_samples_from_profile(const RadialProfile& prof) {
    prof.validate();
    PhaseSamples ps;
    std::size_t i = 0;
    while (i < prof.size() && !(prof.omega[i] > tip_omega_threshold)) ++i;
    double t = 0.0;
    for (std::size_t k = i; k < prof.size(); ++k) {
        if (k > i) t += 0.5 * (prof.r[k] - prof.r[k - 1]) * (1.0 / prof.omega[k] + 1.0 / prof.omega[k - 1]);
        ps.t.push_back(t);
        ps.x.push_back(prof.omega_p[k]);
        ps.log_x.push_back(std::log(prof.omega_p[k]));
        ps.y.push_back(-prof.omega[k] * prof.f_p[k]);
        ps.omega.push_back(prof.omega[k]);
    }
    return ps;
}

CigarReport cigar_checks(const RadialProfile& prof, double tail_fraction) {
    prof.validate();
    if (!prof.params.is_cigar() || !prof.params.is_steady())
        throw OutOfRegime("cigar checks need a steady profile with rho = 1/(n-1)");
    CigarReport rep;
    const std::size_t first = tail_start(prof.size(), tail_fraction);
    const auto [lo, hi] = std::minmax_element(prof.omega.begin() + static_cast<std::ptrdiff_t>(first), prof.omega.end());
    double sum = 0.0;
    for (std::size_t i = first; i < prof.size(); ++i) sum += prof.omega[i];
    rep.tail_mean = sum / static_cast<double>(prof.size() - first);
    rep.tail_oscillation = (*hi - *lo) / rep.tail_mean;
    const auto fits = fit_profile_exponents(prof, tail_fraction);
    rep.f = fits.f;
    rep.volume = fits.volume;
    rep.omega_bounded = rep.tail_oscillation < 0.01;
    rep.f_ok = std::abs(rep.f.exponent - 2.0) < f_exp_tol;
    rep.volume_ok = std::abs(rep.volume.exponent - 1.0) < vol_exp_tol;
    return rep;
}

}  // namespace rsl
