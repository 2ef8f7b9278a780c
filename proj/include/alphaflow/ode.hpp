#pragma once

#include "alphaflow/types.hpp"

#include <functional>
#include <vector>

namespace alphaflow::ode {

enum class Method {
    RK45,      ///< Dormand-Prince 4(5), adaptive
    RK4Fixed,  ///< classical Runge-Kutta, fixed step = initial_step
};

/// Right-hand side f(t, y).
using Field = std::function<Vector(double, const Vector&)>;
/// Returns false if the state is unacceptable (e.g. outside an admissible region).
using Guard = std::function<bool(double, const Vector&)>;
/// Called on every accepted state; returning false stops the integration.
using Monitor = std::function<bool(double, const Vector&)>;

struct IntegratorConfig {
    Method method = Method::RK45;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    double max_step = 1e9;
    long max_steps = 1'000'000;
    /// Consecutive guard rejections tolerated before giving up.
    int max_guard_halvings = 40;
    Guard guard;
    std::vector<Monitor> monitors;
};

enum class Status {
    Completed,
    StoppedByMonitor,
    GuardRejectionAtMinStep,
    MaxStepsExceeded,
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    Status status = Status::Completed;
    long accepted_steps = 0;
    long rejected_steps = 0;

    double final_time() const { return times.back(); }
    const Vector& final_state() const { return states.back(); }
};

/// Integrates y' = f(t, y) from t = 0 to t_end, recording every accepted
/// state. The guard is consulted on every stage and trial state; a guard
/// rejection halves the step. Throws ConfigError on invalid configuration.
Trajectory integrate(const Field& field, const Vector& y0, double t_end, const IntegratorConfig& cfg);

} // namespace alphaflow::ode
