#include "rsl/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "rsl/errors.hpp"
#include "rsl/phase_system.hpp"
#include "rsl/warped_geometry.hpp"

namespace rsl {

namespace {

void require_existence_regime(const SolitonParams& p) {
    p.validate();
    if (p.lambda != 0.0 || p.kappa != 1) throw NotSteady("steady construction requires lambda = 0 and kappa = 1");
    switch (classify_steady(p)) {
        case SteadyRegime::schouten: throw SchoutenSingular("no steady solution with positive curvature");
        case SteadyRegime::forbidden:
            throw OutOfRegime("rho lies in [1/(2(n-1)), 1/(n-1)): no complete steady solution");
        default: break;
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw InvalidParameters("invalid grid bounds");
    std::vector<double> g(count);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / (count - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += jobs) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Least squares for omega ~ s0 + s1 r + s3 r^3 over the given samples.
void fit_tip(const std::vector<double>& r, const std::vector<double>& w, std::size_t count, double scale, double& s0,
             double& s1) {
    double A[3][3] = {}, rhs[3] = {};
    for (std::size_t i = 0; i < count; ++i) {
        const double xi = r[i] / scale;
        const double basis[3] = {1.0, xi, xi * xi * xi};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) A[a][b] += basis[a] * basis[b];
            rhs[a] += basis[a] * w[i] / scale;
        }
    }
    // Gaussian elimination with partial pivoting.
    int idx[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(A[idx[row]][col]) > std::abs(A[idx[piv]][col])) piv = row;
        std::swap(idx[col], idx[piv]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = A[idx[row]][col] / A[idx[col]][col];
            for (int k = col; k < 3; ++k) A[idx[row]][k] -= f * A[idx[col]][k];
            rhs[idx[row]] -= f * rhs[idx[col]];
        }
    }
    double sol[3];
    for (int row = 2; row >= 0; --row) {
        double s = rhs[idx[row]];
        for (int k = row + 1; k < 3; ++k) s -= A[idx[row]][k] * sol[k];
        sol[row] = s / A[idx[row]][row];
    }
    s0 = sol[0] * scale;
    s1 = sol[1];
}

}  // namespace

// ---------------------------------------------------------------------------

double EpsilonSolution::x_at(double s) const {
    const double v = trajectory.dense_eval(s, 0);
    return log_state() ? std::exp(v) : v;
}

double EpsilonSolution::log_x_at(double s) const {
    const double v = trajectory.dense_eval(s, 0);
    return log_state() ? v : std::log(v);
}

double default_span(const SolitonParams& p, double horizon) {
    const double m = p.m();
    double rate = p.is_cigar() ? (p.n - 2.0) : (p.n - 2.0) * (1.0 - 2.0 * m * p.rho);
    return horizon * std::abs(rate);
}

EpsilonSolution epsilon_trajectory(const SolitonParams& p, double eps, double span) {
    require_existence_regime(p);
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameters("eps must lie in (0, 1)");
    if (!(span > 0.0)) throw InvalidParameters("span must be positive");

    EpsilonSolution sol;
    sol.params = p;
    sol.regime = classify_steady(p);
    sol.eps = eps;
    sol.span = span;

    IntegrationConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-20;
    cfg.max_steps = 20'000'000;

    Field field;
    State start(1);
    if (!sol.log_state()) {
        field = [p](double y, std::span<const double> s, std::span<double> ds) { ds[0] = scalar_field_F(p, s[0], y); };
        start[0] = 1.0 + eps;
    } else {
        const auto k = coefficients(p);
        const bool cigar = p.is_cigar();
        field = [k, cigar](double z, std::span<const double> s, std::span<double> ds) {
            const double x = std::exp(s[0]);
            const double curv = -std::expm1(2.0 * s[0]);
            const double num = cigar ? z : k.a * curv / x + z;
            const double den = k.b * curv + k.c * x * z;
            if (den == 0.0) throw DenominatorZero(x, -z);
            ds[0] = num / den;
        };
        start[0] = std::log1p(-eps);
    }
    sol.trajectory = integrate(field, start, 0.0, span, cfg);
    sol.trajectory.require_completed();
    return sol;
}

EpsilonFamily build_family(const SolitonParams& p, const FamilyOptions& opts) {
    require_existence_regime(p);
    EpsilonFamily fam;
    fam.params = p;
    fam.regime = classify_steady(p);
    fam.epsilons = opts.ladder;
    std::sort(fam.epsilons.begin(), fam.epsilons.end(), std::greater<>());
    if (fam.epsilons.empty()) throw InvalidParameters("empty eps ladder");
    const double span = opts.span > 0.0 ? opts.span : default_span(p);
    fam.grid = log_grid(opts.grid_start, span, opts.grid_points);

    const std::size_t levels = fam.epsilons.size();
    fam.x.assign(levels, std::vector<double>(fam.grid.size()));
    fam.log_x.assign(levels, std::vector<double>(fam.grid.size()));
    parallel_for(levels, opts.jobs, [&](std::size_t k) {
        const auto sol = epsilon_trajectory(p, fam.epsilons[k], span);
        for (std::size_t i = 0; i < fam.grid.size(); ++i) {
            const double v = sol.trajectory.dense_eval(fam.grid[i], 0);
            fam.x[k][i] = sol.log_state() ? std::exp(v) : v;
            fam.log_x[k][i] = sol.log_state() ? v : std::log(v);
        }
    });
    return fam;
}

OrderingReport check_ordering(const EpsilonFamily& fam, double noise) {
    OrderingReport rep;
    const bool log_state = fam.log_state();
    for (std::size_t k = 0; k + 1 < fam.epsilons.size(); ++k) {
        const auto& big = fam.values(k);       // larger eps
        const auto& small = fam.values(k + 1); // smaller eps
        for (std::size_t i = 0; i < fam.grid.size(); ++i) {
            ++rep.comparisons;
            // Below 1/(2m) the family decreases towards its limit, above 1/m it increases.
            const double excess = log_state ? big[i] - small[i] : small[i] - big[i];
            const double allowance = noise * std::max(std::abs(big[i]), std::abs(small[i]));
            if (excess < -allowance) ++rep.resolved;
            if (excess > allowance) {
                ++rep.violations;
                rep.ordered = false;
            }
            if (excess > 0.0) rep.worst_violation = std::max(rep.worst_violation, excess / std::max(allowance, 1e-300));
        }
    }
    for (std::size_t k = 0; k < fam.epsilons.size(); ++k) {
        for (std::size_t i = 0; i < fam.grid.size(); ++i) {
            const double x = fam.x[k][i];
            bool ok;
            if (!log_state) {
                const double h = nullcline_h(fam.params, fam.grid[i]);
                ok = x >= h * (1.0 - noise) && x <= (1.0 + fam.epsilons[k]) * (1.0 + noise);
            } else {
                ok = fam.log_x[k][i] <= noise;
            }
            if (!ok) {
                rep.bounds_hold = false;
                ++rep.bound_violations;
            }
        }
    }
    return rep;
}

LimitCurve extract_limit(const EpsilonFamily& fam, double tol) {
    const std::size_t levels = fam.epsilons.size();
    if (levels < 3) throw NotConverged("limit extraction needs at least three eps levels");
    if (!check_ordering(fam).ordered) throw NotConverged("eps family is not monotone; no bracket for the limit");

    LimitCurve lim;
    lim.params = fam.params;
    lim.regime = fam.regime;
    lim.eps = fam.epsilons.back();
    lim.tol = tol;
    lim.grid = fam.grid;
    lim.x = fam.x.back();
    lim.log_x = fam.log_x.back();
    const auto& last = fam.values(levels - 1);
    const auto& prev = fam.values(levels - 2);
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < fam.grid.size(); ++i) {
        lim.gap.push_back(std::abs(last[i] - prev[i]));
        lim.converged.push_back(lim.gap.back() < tol);
        if (!lim.converged.back()) bad.push_back(i);
    }
    if (!bad.empty()) {
        std::ostringstream os;
        os << "Cauchy gap exceeds " << tol << " at " << bad.size() << " grid points:";
        for (std::size_t j = 0; j < std::min<std::size_t>(bad.size(), 8); ++j)
            os << " y=" << fam.grid[bad[j]] << " (gap " << lim.gap[bad[j]] << ")";
        if (bad.size() > 8) os << " ...";
        throw NotConverged(os.str());
    }
    return lim;
}

// ---------------------------------------------------------------------------

UnstableDirection unstable_direction(const SolitonParams& p) {
    const auto J = steady_jacobian_at_p(p);
    const double tr = J.xx + J.yy;
    const double det = J.xx * J.yy - J.xy * J.yx;
    const double disc = 0.25 * tr * tr - det;
    if (disc < 0.0) throw OutOfRegime("P is a focus; no real unstable direction");
    const double mu = 0.5 * tr + std::sqrt(disc);
    if (!(mu > 0.0)) throw OutOfRegime("P has no unstable direction");
    // Null vector of J - mu I from whichever row is better conditioned.
    double vx1 = J.xy, vy1 = mu - J.xx;
    double vx2 = mu - J.yy, vy2 = J.yx;
    double vx, vy;
    if (std::hypot(vx1, vy1) >= std::hypot(vx2, vy2)) {
        vx = vx1;
        vy = vy1;
    } else {
        vx = vx2;
        vy = vy2;
    }
    const double norm = std::hypot(vx, vy);
    if (std::abs(vx) > 1e-14 * norm) {
        vy = -vy / vx;
        vx = -1.0;
    } else {
        vx = 0.0;
        vy = vy > 0.0 ? 1.0 : -1.0;
    }
    return {mu, vx, vy};
}

double SeparatrixTrace::r_end() const { return at(t_end()).r; }

double SeparatrixTrace::y_end() const { return at(t_end()).y; }

SeparatrixTrace::Point SeparatrixTrace::at(double t) const {
    Point pt{};
    pt.t = t;
    if (!has_outer_ || t <= inner_.t_back()) {
        const auto s = inner_.dense_eval(t);
        pt.x = 1.0 - s[0];
        pt.log_x = std::log1p(-s[0]);
        pt.one_minus_x2 = s[0] * (2.0 - s[0]);
        pt.y = s[1];
        pt.omega = s[2];
        pt.r = s[3];
        pt.f = s[4];
    } else {
        const auto s = outer_.dense_eval(t);
        pt.x = std::exp(s[0]);
        pt.log_x = s[0];
        pt.one_minus_x2 = -std::expm1(2.0 * s[0]);
        pt.y = s[1];
        pt.omega = s[2];
        pt.r = s[3];
        pt.f = s[4];
    }
    return pt;
}

double SeparatrixTrace::x_rate(const Point& pt) const {
    const auto k = coefficients(params_);
    return (k.a * pt.one_minus_x2 - pt.x * pt.y) / k.d;
}

double SeparatrixTrace::y_rate(const Point& pt) const {
    const auto k = coefficients(params_);
    return (-k.b * pt.one_minus_x2 + k.c * pt.x * pt.y) / k.d;
}

double SeparatrixTrace::solve_monotone(std::size_t component, double target, bool absolute) const {
    auto value = [&](const Trajectory& tr, double t) {
        const double v = tr.dense_eval(t, component);
        return absolute ? std::abs(v) : v;
    };
    for (const Trajectory* tr : {&inner_, &outer_}) {
        if (tr == &outer_ && !has_outer_) break;
        const auto& ts = tr->times();
        auto node = [&](std::size_t i) {
            const double v = tr->state(i)[component];
            return absolute ? std::abs(v) : v;
        };
        if (target < node(0) || target > node(ts.size() - 1)) continue;
        // Node bracket by binary search, then bisection with secant steps on the dense output.
        std::size_t lo = 0, hi = ts.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (node(mid) < target ? lo : hi) = mid;
        }
        double ta = ts[lo], tb = ts[hi];
        double fa = node(lo) - target, fb = node(hi) - target;
        if (fa == 0.0) return ta;
        if (fb == 0.0) return tb;
        for (int it = 0; it < 200 && tb - ta > 4e-16 * std::max(1.0, std::abs(tb)); ++it) {
            double tm = ta - fa * (tb - ta) / (fb - fa);
            if (!(tm > ta && tm < tb) || it % 3 == 2) tm = 0.5 * (ta + tb);
            const double fm = value(*tr, tm) - target;
            if (fm == 0.0) return tm;
            if ((fm < 0.0) == (fa < 0.0)) {
                ta = tm;
                fa = fm;
            } else {
                tb = tm;
                fb = fm;
            }
            if (std::abs(fm) <= 2e-16 * std::abs(target)) return tm;
        }
        return std::abs(fa) < std::abs(fb) ? ta : tb;
    }
    throw OutOfRange("target outside the traced range");
}

double SeparatrixTrace::t_at_r(double r) const { return solve_monotone(3, r, false); }

double SeparatrixTrace::t_at_abs_y(double y) const { return solve_monotone(1, y, true); }

PhaseSamples SeparatrixTrace::phase_samples(double dt) const {
    PhaseSamples ps;
    const double t0 = t_start(), t1 = t_end();
    const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / dt)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = std::min(t1, t0 + dt * static_cast<double>(i));
        const auto pt = at(t);
        ps.t.push_back(t);
        ps.x.push_back(pt.x);
        ps.log_x.push_back(pt.log_x);
        ps.y.push_back(pt.y);
        ps.omega.push_back(pt.omega);
    }
    return ps;
}

SeparatrixTrace trace_separatrix(const SolitonParams& p, double span, const TraceOptions& opts) {
    require_existence_regime(p);
    if (!(span > 0.0)) throw InvalidParameters("span must be positive");
    SeparatrixTrace tr;
    tr.params_ = p;
    tr.dir_ = unstable_direction(p);
    const auto k = coefficients(p);
    const double delta = opts.delta;
    const double mu = tr.dir_.eigenvalue;

    // Linearized data at phase time 0 with the tip at r = 0 and f(tip) = 0.
    const double y0 = delta * tr.dir_.vy;
    const double w0 = opts.omega_start;
    State start{delta, y0, w0, w0 * (1.0 + delta / (mu + 1.0)), -y0 / mu};

    IntegrationConfig cfg;
    cfg.rel_tol = opts.rel_tol;
    cfg.abs_tol = 1e-30;
    cfg.max_steps = opts.max_steps;
    cfg.blow_up_threshold = 1e300;
    const double t_max = 1e7;
    EventSpec reach_span{"span", [span](double, std::span<const double> s) { return std::abs(s[1]) - span; },
                         Crossing::rising, true};

    const Field inner = [k](double, std::span<const double> s, std::span<double> ds) {
        const double u = s[0];
        const double x = 1.0 - u;
        const double curv = u * (2.0 - u);
        const double dx = (k.a * curv - x * s[1]) / k.d;
        ds[0] = -dx;
        ds[1] = (-k.b * curv + k.c * x * s[1]) / k.d;
        ds[2] = x * s[2];
        ds[3] = s[2];
        ds[4] = -s[1];
    };
    cfg.events = {reach_span, EventSpec{"switch", [](double, std::span<const double> s) { return s[0] - 0.5; },
                                        Crossing::rising, true}};
    tr.inner_ = integrate(inner, start, 0.0, t_max, cfg);
    tr.inner_.require_completed();
    if (tr.inner_.termination() != Termination::event) throw NoEventWithinSpan("separatrix did not reach the span");
    if (tr.inner_.events().back().name == "span") return tr;

    const Field outer = [k](double, std::span<const double> s, std::span<double> ds) {
        const double x = std::exp(s[0]);
        const double curv = -std::expm1(2.0 * s[0]);
        // x underflows in the cigar tail, where a = 0.
        const double pull = k.a == 0.0 ? 0.0 : k.a * curv / x;
        ds[0] = (pull - s[1]) / k.d;
        ds[1] = (-k.b * curv + k.c * x * s[1]) / k.d;
        ds[2] = x * s[2];
        ds[3] = s[2];
        ds[4] = -s[1];
    };
    auto mid = tr.inner_.back();
    mid[0] = std::log1p(-mid[0]);
    cfg.events = {reach_span};
    tr.outer_ = integrate(outer, mid, tr.inner_.t_back(), t_max, cfg);
    tr.outer_.require_completed();
    if (tr.outer_.termination() != Termination::event) throw NoEventWithinSpan("separatrix did not reach the span");
    tr.has_outer_ = true;
    return tr;
}

Reconstruction reconstruct(const SolitonParams& p, const LimitCurve& limit, const ReconstructOptions& opts) {
    require_existence_regime(p);
    if (!(limit.params == p)) throw InvalidParameters("limit curve belongs to different parameters");
    Reconstruction rec{.profile = {}, .trace = trace_separatrix(p, limit.span(), opts.trace)};
    const auto& tr = rec.trace;
    const double m = p.m();

    // Cross-check against the limit curve: the trace must stay within the Cauchy bracket.
    const bool log_state = limit.log_state();
    for (std::size_t i = 0; i < limit.grid.size(); ++i) {
        const auto pt = tr.at(tr.t_at_abs_y(limit.grid[i]));
        const double v_sep = log_state ? pt.log_x : pt.x;
        const double v_lim = log_state ? limit.log_x[i] : limit.x[i];
        const double diff = std::abs(v_sep - v_lim);
        rec.limit_mismatch = std::max(rec.limit_mismatch, diff);
        rec.limit_excess = std::max(rec.limit_excess, (diff - limit.gap[i]) / std::max(1.0, std::abs(v_lim)));
    }
    if (rec.limit_excess > 1e-8) {
        std::ostringstream os;
        os << "separatrix leaves the limit-curve bracket by " << rec.limit_excess;
        throw AnchoringFailed(os.str());
    }

    // Cap size from the curvature at the start point, which sits next to the tip.
    const auto p0 = tr.at(tr.t_start());
    const double R0 = (-2.0 * m * tr.x_rate(p0) + m * (m - 1.0) * p0.one_minus_x2) / (p0.omega * p0.omega);
    if (!(R0 > 0.0)) throw AnchoringFailed("nonpositive curvature at the tip");
    rec.cap_size = 1.0 / std::sqrt(R0);

    RadialProfile& prof = rec.profile;
    prof.params = p;
    prof.normalization = Normalization::raw;
    const double r_end = tr.r_end();
    double r = std::max(opts.first_sample * rec.cap_size, p0.r * (1.0 + 1e-9));
    while (r <= r_end) {
        const auto pt = tr.at(tr.t_at_r(r));
        const double x_rate = tr.x_rate(pt);
        prof.push_back(r, pt.omega, pt.x, x_rate / pt.omega, pt.f, -pt.y / pt.omega);
        double dr = opts.log_spacing * std::max(r, rec.cap_size);
        // Resolve fast decay of x (cigar tail) for the finite-difference checks.
        const double decay = pt.x > 0.0 ? std::abs(x_rate / pt.x) : 0.0;
        if (decay > 0.0 && std::isfinite(decay)) dr = std::min(dr, opts.log_x_step * pt.omega / decay);
        r += dr;
    }
    if (prof.size() < 16) throw AnchoringFailed("too few profile samples; enlarge the span");

    // Tip anchoring: omega ~ (r - r_*) over the leading samples of the cap.
    std::size_t in_cap = 0;
    while (in_cap < prof.size() && prof.r[in_cap] < rec.cap_size) ++in_cap;
    const std::size_t window = std::max<std::size_t>(4, (in_cap + 19) / 20);
    double s0 = 0.0, s1 = 1.0;
    fit_tip(prof.r, prof.omega, window, rec.cap_size, s0, s1);
    rec.tip_offset = -s0 / s1;
    rec.tip_slope = s1;
    if (std::abs(rec.tip_offset) > opts.anchor_tol * rec.cap_size || std::abs(s1 - 1.0) > 1e-3) {
        std::ostringstream os;
        os << "tip extrapolation gives r_* = " << rec.tip_offset << ", slope " << s1;
        throw AnchoringFailed(os.str());
    }
    return rec;
}

RadialProfile reconstruct_profile(const SolitonParams& p, const LimitCurve& limit, const ReconstructOptions& opts) {
    return reconstruct(p, limit, opts).profile;
}

RadialProfile normalize_profile(const RadialProfile& prof) {
    const double R_tip = tip_scalar_curvature(prof);
    if (!(R_tip > 0.0)) throw NonpositiveTipCurvature("tip scalar curvature is not positive");
    auto out = scale_profile(prof, std::sqrt(R_tip));
    out.normalization = Normalization::R_at_origin_one;
    return out;
}

Construction construct_steady(const SolitonParams& p, const ConstructOptions& opts) {
    require_existence_regime(p);
    Construction c;
    c.family = build_family(p, opts.family);
    c.ordering = check_ordering(c.family);
    c.limit = extract_limit(c.family, opts.limit_tol);
    c.reconstruction = reconstruct(p, c.limit, opts.reconstruct);
    c.profile = opts.normalize ? normalize_profile(c.reconstruction.profile) : c.reconstruction.profile;
    return c;
}

// ---------------------------------------------------------------------------

const char* to_string(FailureMode m) {
    switch (m) {
        case FailureMode::schouten_constraint: return "schouten_constraint";
        case FailureMode::x_zero_crossing: return "x_zero_crossing";
        case FailureMode::y_sign: return "y_sign";
    }
    return "unknown";
}

NonexistenceReport verify_nonexistence(const SolitonParams& p, double eps, double t_span) {
    p.validate();
    if (p.lambda != 0.0 || p.kappa != 1) throw NotSteady("non-existence check requires lambda = 0 and kappa = 1");
    const auto regime = classify_steady(p);
    if (regime != SteadyRegime::schouten && regime != SteadyRegime::forbidden)
        throw OutOfRegime("non-existence check requires 1/(2(n-1)) <= rho < 1/(n-1)");

    NonexistenceReport rep;
    if (regime == SteadyRegime::schouten) {
        rep.mode = FailureMode::schouten_constraint;
        rep.detail = "the gradient identity forces Ric(d/dr, d/dr) = 0, contradicting positive curvature";
        return rep;
    }

    const auto dir = unstable_direction(p);
    rep.eigenvalue = dir.eigenvalue;
    rep.integrated = true;
    const Field field = [p](double, std::span<const double> s, std::span<double> ds) {
        const auto r = steady_vector_field(p, PhaseState{s[0], s[1], s[2], 0.0});
        ds[0] = r.dx;
        ds[1] = r.dy;
        ds[2] = r.domega;
    };
    IntegrationConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-14;
    cfg.events = {EventSpec{"x_zero", [](double, std::span<const double> s) { return s[0]; }, Crossing::falling, true}};

    auto run = [&](double y_start) {
        return integrate(field, State{1.0 - eps, y_start, 1e-3}, 0.0, t_span, cfg);
    };
    const auto main = run(eps * dir.vy);
    if (main.termination() == Termination::event) {
        const auto& ev = main.events().back();
        rep.x_zero_reached = true;
        rep.t_event = ev.t;
        rep.x_event = ev.state[0];
        rep.y_event = ev.state[1];
    }

    const bool y_invariant = coefficients(p).b == 0.0 || rho_equals(p.rho, 1.0 / p.n);
    if (y_invariant) {
        // The unstable direction lies on y = 0; any y != 0 shrinks forward in time,
        // so no trajectory with y != 0 can leave P.
        rep.mode = FailureMode::y_sign;
        rep.y_opposes_rate = true;
        for (double sign : {1.0, -1.0}) {
            const auto tr = run(sign * eps * eps);
            for (std::size_t i = 0; i < tr.size(); ++i) {
                const auto s = tr.state(i);
                if (!(s[0] > 0.0)) continue;
                const auto rate = steady_vector_field(p, PhaseState{s[0], s[1], s[2], 0.0});
                ++rep.y_sign_samples;
                if (!(s[1] * rate.dy < 0.0)) rep.y_opposes_rate = false;
            }
        }
        rep.detail = "y = 0 is invariant and y dy/dt < 0 off it";
        return rep;
    }

    rep.mode = FailureMode::x_zero_crossing;
    if (!rep.x_zero_reached) {
        std::ostringstream os;
        os << "x = 0 not reached within t_span = " << t_span << " (termination " << to_string(main.termination())
           << ")";
        throw NoEventWithinSpan(os.str());
    }
    rep.detail = "x reaches 0, leaving the positive-curvature band 0 < x < 1";
    return rep;
}

}  // namespace rsl
