#include "rsl/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "rsl/errors.hpp"

namespace rsl {

namespace {

// Dormand-Prince 5(4) tableau with the Hairer-Wanner continuous extension.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double safe = 0.9;
constexpr double facc1 = 5.0;   // step shrinks at most by this factor
constexpr double facc2 = 0.1;   // and grows at most by its inverse
constexpr double beta = 0.04;
constexpr double expo1 = 0.2 - beta * 0.75;

struct Workspace {
    explicit Workspace(std::size_t n)
        : k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n), err(n) {}
    State k1, k2, k3, k4, k5, k6, k7, tmp, y_new, err;
};

double scale_of(const IntegrationConfig& cfg, std::size_t i, double y0, double y1) {
    const double atol = cfg.abs_tol_per_component.empty() ? cfg.abs_tol : cfg.abs_tol_per_component[i];
    return atol + cfg.rel_tol * std::max(std::abs(y0), std::abs(y1));
}

double rms(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

double initial_step(const Field& field, double t, const State& y, const State& f0, double dir,
                    const IntegrationConfig& cfg, double hmax) {
    const std::size_t n = y.size();
    State a(n), b(n), y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sk = scale_of(cfg, i, y[i], y[i]);
        a[i] = y[i] / sk;
        b[i] = f0[i] / sk;
    }
    const double dnf = rms(b);
    const double dny = rms(a);
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min(h, hmax);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y[i] + dir * h * f0[i];
    field(t + dir * h, y1, f1);
    for (std::size_t i = 0; i < n; ++i) a[i] = (f1[i] - f0[i]) / scale_of(cfg, i, y[i], y[i]);
    const double der2 = rms(a) / h;
    const double der12 = std::max(std::abs(der2), dnf);
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, hmax});
}

bool crossed(double g0, double g1, Crossing dir) {
    const bool rise = g0 < 0.0 && g1 >= 0.0;
    const bool fall = g0 > 0.0 && g1 <= 0.0;
    switch (dir) {
        case Crossing::rising: return rise;
        case Crossing::falling: return fall;
        case Crossing::any: return rise || fall;
    }
    return false;
}

}  // namespace

const char* to_string(Termination t) {
    switch (t) {
        case Termination::t_end_reached: return "t_end_reached";
        case Termination::event: return "event";
        case Termination::step_limit: return "step_limit";
        case Termination::blow_up: return "blow_up";
        case Termination::step_size_underflow: return "step_size_underflow";
    }
    return "unknown";
}

std::size_t Trajectory::locate(double t) const {
    // Index k of the step [t_k, t_{k+1}] containing t.
    const bool forward = times_.size() < 2 || times_.back() >= times_.front();
    auto it = forward ? std::upper_bound(times_.begin(), times_.end(), t)
                      : std::upper_bound(times_.begin(), times_.end(), t, std::greater<>());
    std::size_t k = static_cast<std::size_t>(std::distance(times_.begin(), it));
    k = k == 0 ? 0 : k - 1;
    return std::min(k, times_.size() - 2);
}

double Trajectory::interpolate(std::size_t k, double t, std::size_t i) const {
    const double theta = (t - times_[k]) / step_h_[k];
    const double* r = dense_.data() + (k * dim_ + i) * 4;
    const double y0 = states_[k * dim_ + i];
    return y0 + theta * (r[0] + (1.0 - theta) * (r[1] + theta * (r[2] + (1.0 - theta) * r[3])));
}

double Trajectory::dense_eval(double t, std::size_t component) const {
    if (times_.empty()) throw OutOfRange("empty trajectory");
    const double lo = std::min(times_.front(), times_.back());
    const double hi = std::max(times_.front(), times_.back());
    if (!(t >= lo && t <= hi)) throw OutOfRange("dense_eval outside the integrated range");
    if (times_.size() == 1) return states_[component];
    const std::size_t k = locate(t);
    if (t == times_[k]) return states_[k * dim_ + component];
    if (t == times_[k + 1]) return states_[(k + 1) * dim_ + component];
    if (dense_.empty()) throw OutOfRange("trajectory was integrated without dense output");
    return interpolate(k, t, component);
}

State Trajectory::dense_eval(double t) const {
    State out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = dense_eval(t, i);
    return out;
}

const Trajectory& Trajectory::require_completed() const {
    switch (termination_) {
        case Termination::blow_up:
            throw BlowUp("state norm exceeded the blow-up threshold at t = " + std::to_string(t_back()));
        case Termination::step_limit:
            throw StepLimit("step limit exhausted at t = " + std::to_string(t_back()));
        case Termination::step_size_underflow:
            throw StepSizeUnderflow("step size fell below the minimum at t = " + std::to_string(t_back()));
        default: return *this;
    }
}

Trajectory integrate(const Field& field, const State& start, double t0, double t1, const IntegrationConfig& cfg) {
    if (t0 == t1) throw OutOfRange("integration interval is empty");
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_steps <= 0)
        throw OutOfRange("tolerances and max_steps must be positive");
    const std::size_t n = start.size();
    if (!cfg.abs_tol_per_component.empty() && cfg.abs_tol_per_component.size() != n)
        throw OutOfRange("abs_tol_per_component has the wrong length");

    Trajectory tr;
    tr.dim_ = n;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double hmax = std::min(cfg.max_step, std::abs(t1 - t0));

    Workspace w(n);
    State y = start;
    double t = t0;
    field(t, y, w.k1);
    for (double v : w.k1)
        if (!std::isfinite(v)) throw OutOfRange("field is not finite at the start state");

    tr.times_.push_back(t);
    tr.states_.insert(tr.states_.end(), y.begin(), y.end());

    std::vector<double> g_old(cfg.events.size());
    for (std::size_t e = 0; e < cfg.events.size(); ++e) g_old[e] = cfg.events[e].guard(t, y);

    double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, hmax) : initial_step(field, t, y, w.k1, dir, cfg, hmax);
    double facold = 1e-4;
    bool last_rejected = false;
    long steps = 0;
    std::vector<double> coeff(4 * n);

    for (;;) {
        if (steps >= cfg.max_steps) {
            tr.termination_ = Termination::step_limit;
            break;
        }
        ++steps;
        bool last = false;
        if ((t + 1.01 * dir * h - t1) * dir >= 0.0) {
            h = std::abs(t1 - t);
            last = true;
        }
        const double hs = dir * h;

        for (std::size_t i = 0; i < n; ++i) w.tmp[i] = y[i] + hs * a21 * w.k1[i];
        field(t + c2 * hs, w.tmp, w.k2);
        for (std::size_t i = 0; i < n; ++i) w.tmp[i] = y[i] + hs * (a31 * w.k1[i] + a32 * w.k2[i]);
        field(t + c3 * hs, w.tmp, w.k3);
        for (std::size_t i = 0; i < n; ++i) w.tmp[i] = y[i] + hs * (a41 * w.k1[i] + a42 * w.k2[i] + a43 * w.k3[i]);
        field(t + c4 * hs, w.tmp, w.k4);
        for (std::size_t i = 0; i < n; ++i)
            w.tmp[i] = y[i] + hs * (a51 * w.k1[i] + a52 * w.k2[i] + a53 * w.k3[i] + a54 * w.k4[i]);
        field(t + c5 * hs, w.tmp, w.k5);
        for (std::size_t i = 0; i < n; ++i)
            w.tmp[i] = y[i] + hs * (a61 * w.k1[i] + a62 * w.k2[i] + a63 * w.k3[i] + a64 * w.k4[i] + a65 * w.k5[i]);
        const double t_new = last ? t1 : t + hs;
        field(t + hs, w.tmp, w.k6);
        for (std::size_t i = 0; i < n; ++i)
            w.y_new[i] = y[i] + hs * (a71 * w.k1[i] + a73 * w.k3[i] + a74 * w.k4[i] + a75 * w.k5[i] + a76 * w.k6[i]);
        field(t_new, w.y_new, w.k7);

        for (std::size_t i = 0; i < n; ++i) {
            const double e = hs * (e1 * w.k1[i] + e3 * w.k3[i] + e4 * w.k4[i] + e5 * w.k5[i] + e6 * w.k6[i] + e7 * w.k7[i]);
            w.err[i] = e / scale_of(cfg, i, y[i], w.y_new[i]);
        }
        const double err = rms(w.err);

        if (!std::isfinite(err)) {
            ++tr.rejected_;
            h *= 0.1;
            last_rejected = true;
            if (h < cfg.min_step) {
                tr.termination_ = Termination::step_size_underflow;
                break;
            }
            continue;
        }

        const double fac11 = std::pow(err, expo1);
        if (err <= 1.0) {
            double fac = fac11 / std::pow(facold, beta);
            fac = std::clamp(fac / safe, facc2, facc1);
            double h_new = h / fac;
            facold = std::max(err, 1e-4);

            for (std::size_t i = 0; i < n; ++i) {
                const double ydiff = w.y_new[i] - y[i];
                const double bspl = hs * w.k1[i] - ydiff;
                coeff[4 * i + 0] = ydiff;
                coeff[4 * i + 1] = bspl;
                coeff[4 * i + 2] = ydiff - hs * w.k7[i] - bspl;
                coeff[4 * i + 3] = hs * (d1 * w.k1[i] + d3 * w.k3[i] + d4 * w.k4[i] + d5 * w.k5[i] +
                                         d6 * w.k6[i] + d7 * w.k7[i]);
            }

            // Events: locate every crossing in the step, stop at the first terminal one.
            struct Found { std::size_t idx; double t; };
            std::vector<Found> found;
            std::vector<double> g_new(cfg.events.size());
            for (std::size_t e = 0; e < cfg.events.size(); ++e) {
                g_new[e] = cfg.events[e].guard(t_new, w.y_new);
                if (!crossed(g_old[e], g_new[e], cfg.events[e].direction)) continue;
                // Bisection on theta using the continuous extension of this step.
                double lo = 0.0, hi = 1.0;
                State ys(n);
                auto eval_at = [&](double theta) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const double* r = coeff.data() + 4 * i;
                        ys[i] = y[i] + theta * (r[0] + (1.0 - theta) * (r[1] + theta * (r[2] + (1.0 - theta) * r[3])));
                    }
                    return cfg.events[e].guard(t + theta * hs, ys);
                };
                const double g0 = g_old[e];
                const double tol = 1e-12 * std::abs(t_new) + 1e-12;
                while ((hi - lo) * h > 0.25 * tol) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = eval_at(mid);
                    if ((gm < 0.0) == (g0 < 0.0) && gm != 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                found.push_back({e, hi >= 1.0 ? t_new : t + hi * hs});
            }
            std::sort(found.begin(), found.end(), [&](const Found& p, const Found& q) { return (p.t - q.t) * dir < 0.0; });

            double t_stop = t_new;
            bool stop = false;
            for (const auto& fe : found) {
                State ye = fe.t == t_new ? w.y_new : State(n);
                if (fe.t != t_new) {
                    const double theta = (fe.t - t) / hs;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double* r = coeff.data() + 4 * i;
                        ye[i] = y[i] + theta * (r[0] + (1.0 - theta) * (r[1] + theta * (r[2] + (1.0 - theta) * r[3])));
                    }
                }
                tr.events_.push_back({cfg.events[fe.idx].name, fe.t, ye});
                if (cfg.events[fe.idx].terminal) {
                    t_stop = fe.t;
                    stop = true;
                    break;
                }
            }

            tr.step_h_.push_back(hs);
            if (cfg.dense) tr.dense_.insert(tr.dense_.end(), coeff.begin(), coeff.end());
            tr.times_.push_back(t_stop);
            if (stop)
                tr.states_.insert(tr.states_.end(), tr.events_.back().state.begin(), tr.events_.back().state.end());
            else
                tr.states_.insert(tr.states_.end(), w.y_new.begin(), w.y_new.end());

            if (stop) {
                tr.termination_ = Termination::event;
                break;
            }

            bool blown = false;
            for (double v : w.y_new)
                if (!std::isfinite(v) || std::abs(v) > cfg.blow_up_threshold) blown = true;
            if (blown) {
                tr.termination_ = Termination::blow_up;
                break;
            }
            if (last) {
                tr.termination_ = Termination::t_end_reached;
                break;
            }

            g_old = g_new;
            std::swap(w.k1, w.k7);
            y = w.y_new;
            t = t_new;
            if (last_rejected) h_new = std::min(h_new, h);
            last_rejected = false;
            h = std::min(h_new, hmax);
        } else {
            ++tr.rejected_;
            h /= std::min(facc1, fac11 / safe);
            last_rejected = true;
        }
        if (h < cfg.min_step) {
            tr.termination_ = Termination::step_size_underflow;
            break;
        }
    }
    return tr;
}

}  // namespace rsl
