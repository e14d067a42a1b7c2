#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace rsl {

using State = std::vector<double>;

/// dy/dt = field(t, y), written into the output span.
using Field = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

using Guard = std::function<double(double t, std::span<const double> y)>;

enum class Crossing { rising, falling, any };

struct EventSpec {
    std::string name;
    Guard guard;
    Crossing direction = Crossing::any;
    bool terminal = false;
};

struct IntegrationConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Optional per-component absolute tolerances; overrides abs_tol when non-empty.
    std::vector<double> abs_tol_per_component;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0 selects a step automatically
    long max_steps = 1'000'000;
    double min_step = 1e-14;
    double blow_up_threshold = 1e12;
    bool dense = true;
    std::vector<EventSpec> events;
};

enum class Termination { t_end_reached, event, step_limit, blow_up, step_size_underflow };

const char* to_string(Termination t);

struct EventHit {
    std::string name;
    double t;
    State state;
};

/// Accepted steps of one integration. Times are ordered in the direction of
/// integration (decreasing for t1 < t0).
class Trajectory {
public:
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    double t_front() const { return times_.front(); }
    double t_back() const { return times_.back(); }
    std::span<const double> state(std::size_t i) const { return {states_.data() + i * dim_, dim_}; }
    State front() const { return State(state(0).begin(), state(0).end()); }
    State back() const { return State(state(size() - 1).begin(), state(size() - 1).end()); }
    const std::vector<EventHit>& events() const { return events_; }
    Termination termination() const { return termination_; }
    long rejected_steps() const { return rejected_; }
    bool has_dense_output() const { return !dense_.empty() || size() <= 1; }

    /// Fourth-order continuous extension of the accepted steps. Stored sample
    /// times return the stored state exactly. Throws OutOfRange.
    State dense_eval(double t) const;
    double dense_eval(double t, std::size_t component) const;

    /// Throws BlowUp, StepLimit or StepSizeUnderflow for abnormal termination.
    const Trajectory& require_completed() const;

private:
    friend Trajectory integrate(const Field&, const State&, double, double, const IntegrationConfig&);

    std::size_t locate(double t) const;
    double interpolate(std::size_t step, double t, std::size_t component) const;

    std::size_t dim_ = 0;
    std::vector<double> times_;
    std::vector<double> states_;
    std::vector<double> step_h_;  // full step length; the last step may be cut by an event
    std::vector<double> dense_;   // four continuous-extension coefficients per step and component
    std::vector<EventHit> events_;
    Termination termination_ = Termination::t_end_reached;
    long rejected_ = 0;
};

/// Dormand-Prince 5(4) with PI step-size control, continuous extension and
/// event location by bisection on the dense output.
Trajectory integrate(const Field& field, const State& start, double t0, double t1,
                     const IntegrationConfig& cfg = {});

}  // namespace rsl
