#pragma once

#include <string>
#include <vector>

#include "rsl/integrator.hpp"
#include "rsl/params.hpp"
#include "rsl/profile.hpp"

namespace rsl {

/// Steady phase trajectory sampled in phase time t.
struct PhaseSamples {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> log_x;  // survives underflow of x
    std::vector<double> y;
    std::vector<double> omega;
};

// ---------------------------------------------------------------------------
// epsilon-families

/// One member x_eps of the family. For rho < 1/(2m) the independent variable
/// is y and the state is x, starting from x = 1 + eps. For rho >= 1/m it is
/// z = -y and the state is ln x, starting from x = 1 - eps.
struct EpsilonSolution {
    SolitonParams params;
    SteadyRegime regime = SteadyRegime::below_schouten;
    double eps = 0.0;
    double span = 0.0;
    Trajectory trajectory;

    bool log_state() const { return regime == SteadyRegime::cigar_or_above; }
    double x_at(double s) const;
    double log_x_at(double s) const;
};

/// Throws OutOfRegime for 1/(2m) <= rho < 1/m or a non-steady p,
/// InvalidParameters for eps outside (0, 1) or span <= 0. Integrator failures
/// surface as IntegratorError, DenominatorZero from the scalar field.
EpsilonSolution epsilon_trajectory(const SolitonParams& p, double eps, double span);

struct FamilyOptions {
    std::vector<double> ladder{1e-2, 1e-3, 1e-4, 1e-5};
    double span = 0.0;  // 0 selects default_span(p)
    double grid_start = 1e-2;
    std::size_t grid_points = 400;
    unsigned jobs = 1;
};

struct EpsilonFamily {
    SolitonParams params;
    SteadyRegime regime = SteadyRegime::below_schouten;
    std::vector<double> epsilons;  // decreasing
    std::vector<double> grid;      // shared y (or z) grid, log-spaced
    std::vector<std::vector<double>> x;      // [level][grid point]
    std::vector<std::vector<double>> log_x;  // [level][grid point]

    bool log_state() const { return regime == SteadyRegime::cigar_or_above; }
    /// Values in the integration variable: x, or ln x in the log regime.
    const std::vector<double>& values(std::size_t level) const { return log_state() ? log_x[level] : x[level]; }
};

/// Members are integrated concurrently on `jobs` threads; the result does not
/// depend on the thread count.
EpsilonFamily build_family(const SolitonParams& p, const FamilyOptions& opts = {});

struct OrderingReport {
    bool ordered = true;           // no violation beyond the noise allowance
    std::size_t comparisons = 0;
    std::size_t violations = 0;
    std::size_t resolved = 0;      // comparisons with a gap above the allowance
    double worst_violation = 0.0;  // largest relative excess against the required order
    bool bounds_hold = true;       // h <= x <= 1 + eps, or x <= 1 in the log regime
    std::size_t bound_violations = 0;
};

/// Pointwise ordering of neighbouring levels. Differences smaller than
/// noise * |value| count as ties.
OrderingReport check_ordering(const EpsilonFamily& fam, double noise = 1e-10);

struct LimitCurve {
    SolitonParams params;
    SteadyRegime regime = SteadyRegime::below_schouten;
    double eps = 0.0;   // smallest level
    double tol = 0.0;
    std::vector<double> grid;
    std::vector<double> x;
    std::vector<double> log_x;
    std::vector<double> gap;  // Cauchy gap of the last two levels, in x or ln x
    std::vector<bool> converged;

    bool log_state() const { return regime == SteadyRegime::cigar_or_above; }
    double span() const { return grid.back(); }
};

/// Throws NotConverged when fewer than three levels are given, the ordering
/// fails, or the gap exceeds tol anywhere (the message lists the offenders).
LimitCurve extract_limit(const EpsilonFamily& fam, double tol = 1e-4);

// ---------------------------------------------------------------------------
// separatrix and profile reconstruction

/// Unstable eigen-direction of the steady (x, y) system at P, scaled so that
/// the x component is -1 whenever it is nonzero.
struct UnstableDirection {
    double eigenvalue;
    double vx;
    double vy;
};

UnstableDirection unstable_direction(const SolitonParams& p);

struct TraceOptions {
    double delta = 1e-6;      // initial distance 1 - x from P
    double omega_start = 1e-3;
    double rel_tol = 1e-14;
    long max_steps = 5'000'000;
};

/// Trajectory leaving P along its unstable direction, with (r, f) carried
/// along. Integrated in u = 1 - x until x = 1/2, then in ln x.
class SeparatrixTrace {
public:
    struct Point {
        double t, x, log_x, one_minus_x2, y, omega, r, f;
    };

    const SolitonParams& params() const { return params_; }
    const UnstableDirection& direction() const { return dir_; }
    double t_start() const { return inner_.t_front(); }
    double t_switch() const { return inner_.t_back(); }
    double t_end() const { return has_outer_ ? outer_.t_back() : inner_.t_back(); }
    double r_end() const;
    double y_end() const;

    Point at(double t) const;
    /// t at which r reaches the given value (r is increasing in t).
    double t_at_r(double r) const;
    /// t at which |y| reaches the given value (|y| is increasing in t).
    double t_at_abs_y(double y) const;

    /// dx/dt computed from the system, accurate near P.
    double x_rate(const Point& pt) const;
    double y_rate(const Point& pt) const;

    PhaseSamples phase_samples(double dt) const;
    std::size_t steps() const { return inner_.size() + outer_.size(); }

private:
    friend SeparatrixTrace trace_separatrix(const SolitonParams&, double, const TraceOptions&);

    double solve_monotone(std::size_t component, double target, bool absolute) const;

    SolitonParams params_;
    UnstableDirection dir_{};
    Trajectory inner_;  // (u, y, omega, r, f)
    Trajectory outer_;  // (ln x, y, omega, r, f)
    bool has_outer_ = false;
};

/// Integrates until |y| reaches span. Throws OutOfRegime outside the two
/// existence regimes and IntegratorError on abnormal termination.
SeparatrixTrace trace_separatrix(const SolitonParams& p, double span, const TraceOptions& opts = {});

struct ReconstructOptions {
    TraceOptions trace;
    double log_spacing = 0.01;   // relative spacing of the r samples away from the tip
    double first_sample = 0.05;  // first sample radius in units of the cap size R_tip^(-1/2)
    double anchor_tol = 1e-4;    // allowed |r_*| in units of the cap size
    double log_x_step = 0.05;    // largest change of ln x between neighbouring samples
};

struct Reconstruction {
    RadialProfile profile;
    SeparatrixTrace trace;
    double cap_size = 0.0;        // R_tip^(-1/2) of the raw profile
    double tip_offset = 0.0;      // fitted r_* with omega ~ (r - r_*)
    double tip_slope = 0.0;
    double limit_mismatch = 0.0;  // sup distance from the limit curve
    double limit_excess = 0.0;    // sup of the distance beyond the Cauchy gap
};

/// Throws AnchoringFailed if the tip fit does not vanish at r = 0 or the
/// traced trajectory leaves the bracket given by the limit curve.
Reconstruction reconstruct(const SolitonParams& p, const LimitCurve& limit, const ReconstructOptions& opts = {});

RadialProfile reconstruct_profile(const SolitonParams& p, const LimitCurve& limit, const ReconstructOptions& opts = {});

/// Rescales so that the extrapolated tip scalar curvature equals 1.
/// Throws NonpositiveTipCurvature.
RadialProfile normalize_profile(const RadialProfile& prof);

/// y-extent covering roughly `horizon` units of phase time.
double default_span(const SolitonParams& p, double horizon = 300.0);

struct ConstructOptions {
    FamilyOptions family;
    double limit_tol = 1e-4;
    bool normalize = true;
    ReconstructOptions reconstruct;
};

struct Construction {
    EpsilonFamily family;
    OrderingReport ordering;
    LimitCurve limit;
    Reconstruction reconstruction;
    RadialProfile profile;  // normalized when requested
};

/// Full pipeline: family, limit, separatrix, profile.
Construction construct_steady(const SolitonParams& p, const ConstructOptions& opts = {});

// ---------------------------------------------------------------------------
// non-existence

enum class FailureMode { schouten_constraint, x_zero_crossing, y_sign };

const char* to_string(FailureMode m);

struct NonexistenceReport {
    FailureMode mode = FailureMode::schouten_constraint;
    bool integrated = false;
    double eigenvalue = 0.0;
    bool x_zero_reached = false;
    double t_event = 0.0;
    double x_event = 0.0;
    double y_event = 0.0;
    // y_sign evidence: perturbations off the invariant line y = 0 satisfy y dy/dt < 0.
    std::size_t y_sign_samples = 0;
    bool y_opposes_rate = false;
    std::string detail;
};

/// Requires lambda = 0, kappa = 1 and 1/(2m) <= rho < 1/m (OutOfRegime).
/// Throws NoEventWithinSpan when x = 0 is not reached.
NonexistenceReport verify_nonexistence(const SolitonParams& p, double eps = 1e-6, double t_span = 200.0);

}  // namespace rsl
