#include "alphaflow/ode.hpp"

#include "alphaflow/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace alphaflow::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5{35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kB4{5179.0 / 57600, 0.0,         7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kBeta = 0.04;
constexpr double kAlpha = 0.2 - 0.75 * kBeta;

struct StepResult {
    bool guard_ok = true;
    Vector y;
    Vector error;
};

bool passes(const Guard& guard, double t, const Vector& y)
{
    return !guard || guard(t, y);
}

// One Dormand-Prince step. k0 holds f(t, y) on entry (FSAL).
StepResult dopri_step(const Field& f, const Guard& guard, double t, const Vector& y, double h, const Vector& k0,
                      std::array<Vector, 7>& k)
{
    k[0] = k0;
    for (int s = 1; s < 7; ++s) {
        Vector ys = y;
        for (int j = 0; j < s; ++j)
            if (kA[s][j] != 0.0) ys += h * kA[s][j] * k[j];
        if (!passes(guard, t + kC[s] * h, ys)) return {false, {}, {}};
        k[s] = f(t + kC[s] * h, ys);
    }
    StepResult r;
    r.y = y;
    r.error = Vector::Zero(y.size());
    for (int s = 0; s < 7; ++s) {
        if (kB5[s] != 0.0) r.y += h * kB5[s] * k[s];
        r.error += h * (kB5[s] - kB4[s]) * k[s];
    }
    r.guard_ok = passes(guard, t + h, r.y);
    return r;
}

std::optional<Vector> rk4_step(const Field& f, const Guard& guard, double t, const Vector& y, double h)
{
    const Vector k1 = f(t, y);
    const Vector y2 = y + 0.5 * h * k1;
    if (!passes(guard, t + 0.5 * h, y2)) return std::nullopt;
    const Vector k2 = f(t + 0.5 * h, y2);
    const Vector y3 = y + 0.5 * h * k2;
    if (!passes(guard, t + 0.5 * h, y3)) return std::nullopt;
    const Vector k3 = f(t + 0.5 * h, y3);
    const Vector y4 = y + h * k3;
    if (!passes(guard, t + h, y4)) return std::nullopt;
    const Vector k4 = f(t + h, y4);
    Vector next = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!passes(guard, t + h, next)) return std::nullopt;
    return next;
}

void validate(const Vector& y0, double t_end, const IntegratorConfig& cfg)
{
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::ConfigError, "t_end must be positive");
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
        throw Error(ErrorCode::ConfigError, "tolerances must be positive");
    if (!(cfg.min_step > 0.0) || !(cfg.initial_step > 0.0) || !(cfg.max_step >= cfg.min_step))
        throw Error(ErrorCode::ConfigError, "step bounds must be positive and ordered");
    if (cfg.max_steps <= 0) throw Error(ErrorCode::ConfigError, "max_steps must be positive");
    if (y0.size() == 0 || !y0.allFinite()) throw Error(ErrorCode::ConfigError, "initial state must be finite");
}

} // namespace

Trajectory integrate(const Field& field, const Vector& y0, double t_end, const IntegratorConfig& cfg)
{
    validate(y0, t_end, cfg);
    if (!passes(cfg.guard, 0.0, y0)) throw Error(ErrorCode::ConfigError, "guard rejects the initial state");

    Trajectory out;
    double t = 0.0;
    Vector y = y0;
    out.times.push_back(t);
    out.states.push_back(y);

    auto notify = [&](double tt, const Vector& yy) {
        bool keep_going = true;
        for (const auto& m : cfg.monitors) keep_going = m(tt, yy) && keep_going;
        return keep_going;
    };
    if (!notify(t, y)) {
        out.status = Status::StoppedByMonitor;
        return out;
    }

    double h = std::min(cfg.initial_step, cfg.max_step);
    double previous_error = 1.0;
    int guard_halvings = 0;
    Vector k0 = field(t, y);
    std::array<Vector, 7> k;

    while (t < t_end) {
        if (out.accepted_steps + out.rejected_steps >= cfg.max_steps) {
            out.status = Status::MaxStepsExceeded;
            return out;
        }
        const bool last = t + h >= t_end;
        const double step = last ? t_end - t : h;

        Vector next;
        bool accepted = false;
        bool guard_ok = true;
        double error_norm = 0.0;
        if (cfg.method == Method::RK4Fixed) {
            auto r = rk4_step(field, cfg.guard, t, y, step);
            guard_ok = r.has_value();
            if (guard_ok) {
                next = std::move(*r);
                accepted = true;
            }
        } else {
            StepResult r = dopri_step(field, cfg.guard, t, y, step, k0, k);
            guard_ok = r.guard_ok;
            if (guard_ok) {
                const Vector scale =
                    (cfg.abs_tol + cfg.rel_tol * y.cwiseAbs().cwiseMax(r.y.cwiseAbs()).array()).matrix();
                error_norm = std::sqrt((r.error.array() / scale.array()).square().mean());
                accepted = error_norm <= 1.0;
                next = std::move(r.y);
            }
        }

        if (!guard_ok) {
            ++out.rejected_steps;
            h = 0.5 * step;
            if (++guard_halvings > cfg.max_guard_halvings || h < cfg.min_step) {
                out.status = Status::GuardRejectionAtMinStep;
                return out;
            }
            continue;
        }
        guard_halvings = 0;

        if (!accepted) {
            ++out.rejected_steps;
            const double factor = std::max(kMinFactor, kSafety * std::pow(error_norm, -kAlpha));
            h = step * std::min(1.0, factor);
            if (h < cfg.min_step) {
                out.status = Status::MaxStepsExceeded;
                return out;
            }
            continue;
        }

        ++out.accepted_steps;
        t = last ? t_end : t + step;
        y = std::move(next);
        out.times.push_back(t);
        out.states.push_back(y);

        if (cfg.method == Method::RK45) {
            k0 = k[6];
            const double err = std::max(error_norm, 1e-10);
            double factor = kSafety * std::pow(err, -kAlpha) * std::pow(previous_error, kBeta);
            factor = std::clamp(factor, kMinFactor, kMaxFactor);
            previous_error = err;
            // A final truncated step must not shrink the controller's step.
            h = std::clamp((last ? std::max(step, h) : step) * factor, cfg.min_step, cfg.max_step);
        }

        if (!notify(t, y)) {
            out.status = Status::StoppedByMonitor;
            return out;
        }
    }
    out.status = Status::Completed;
    return out;
}

} // namespace alphaflow::ode
