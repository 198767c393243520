#include "invosc/mode_solver.hpp"

#include "invosc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace invosc {

namespace {

constexpr Complex I{0.0, 1.0};

// Coefficients the right-hand side needs at one time.
struct Rhs {
    double X;
    double omega2;
};

Rhs rhs_at(const CoefficientProfile& profile, double t) {
    const auto s = profile.eval(t);
    return {s.X, s.X * s.Z - s.Y * s.Y + (s.dX * s.Y - s.X * s.dY) / s.X};
}

// Mode in first-order form: u and pi = udot / X.
struct Phase {
    Complex u;
    Complex pi;
};

Phase derivative(const Rhs& c, const Phase& y) { return {c.X * y.pi, -c.omega2 * y.u / c.X}; }

// One step from t to t_next; `at_start` holds the coefficients at t on entry and at t_next on exit.
Phase rk4_step(const CoefficientProfile& profile, const Phase& y, double t, double t_next, Rhs& at_start) {
    const double h = t_next - t;
    const Rhs mid = rhs_at(profile, t + 0.5 * h);
    const Rhs end = rhs_at(profile, t_next);

    const Phase k1 = derivative(at_start, y);
    const Phase k2 = derivative(mid, {y.u + 0.5 * h * k1.u, y.pi + 0.5 * h * k1.pi});
    const Phase k3 = derivative(mid, {y.u + 0.5 * h * k2.u, y.pi + 0.5 * h * k2.pi});
    const Phase k4 = derivative(end, {y.u + h * k3.u, y.pi + h * k3.pi});

    at_start = end;
    return {y.u + (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            y.pi + (h / 6.0) * (k1.pi + 2.0 * k2.pi + 2.0 * k3.pi + k4.pi)};
}

// (1/X)(u udot* - u* udot) written in terms of pi = udot/X.
Complex wronskian_of(const Phase& y) { return y.u * std::conj(y.pi) - std::conj(y.u) * y.pi; }

std::size_t step_count(double span, double step) {
    if (span <= 0.0) {
        return 0;
    }
    // Tolerate spans that are an integer multiple of step up to rounding.
    const double n = std::ceil(span / step * (1.0 - 1e-12));
    return static_cast<std::size_t>(std::max(1.0, n));
}

void check_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConstructionError("integration step must be positive");
    }
}

} // namespace

Complex wronskian(const ModeState& state, double X) {
    return (state.u * std::conj(state.udot) - std::conj(state.u) * state.udot) / X;
}

double wronskian_residual(const ModeState& state, double X) { return std::abs(wronskian(state, X) - I); }

ModeState vacuum_init(const CoefficientProfile& profile, double t0) {
    const auto s = profile.eval(t0);
    const double w2 = s.X * s.Z - s.Y * s.Y;
    if (!(w2 > 0.0)) {
        std::ostringstream os;
        os << "reference vacuum undefined at t0 = " << t0 << ": X*Z - Y^2 = " << w2;
        throw InitializationError(os.str());
    }
    const double omega = std::sqrt(w2);
    const Complex u = std::sqrt(s.X / (2.0 * omega));
    return {t0, u, -I * omega * u};
}

ModeState vacuum_init(const ReferenceParams& ref) {
    const Complex u = std::sqrt(ref.X0 / (2.0 * ref.omega0));
    return {ref.t0, u, -I * ref.omega0 * u};
}

ModeState analytic_mode(const ReferenceParams& ref, double t) {
    const Complex u = std::sqrt(ref.X0 / (2.0 * ref.omega0)) * std::exp(-I * ref.omega0 * (t - ref.t0));
    return {t, u, -I * ref.omega0 * u};
}

ModeTrajectory integrate(const CoefficientProfile& profile, const ModeState& start, double t_end,
                         double step, std::size_t sample_every, IntegratorOptions options) {
    check_step(step);
    if (sample_every == 0) {
        throw ConstructionError("sample_every must be at least 1");
    }
    if (t_end < start.t) {
        throw ConstructionError("integration end time precedes the start state");
    }
    // Evaluate both endpoints up front so an out-of-domain request fails before any work.
    Rhs at_start = rhs_at(profile, start.t);
    rhs_at(profile, t_end);

    const double t0 = start.t;
    const std::size_t n = step_count(t_end - t0, step);
    const double h = n > 0 ? (t_end - t0) / static_cast<double>(n) : step;

    ModeTrajectory traj;
    traj.step = h;
    traj.options = options;
    traj.samples.reserve(n / sample_every + 2);
    traj.samples.push_back(start);
    traj.max_drift_time = t0;
    traj.max_residual_time = t0;
    traj.max_wronskian_residual = wronskian_residual(start, at_start.X);

    Phase y{start.u, start.udot / at_start.X};
    const Complex w_start = wronskian_of(y);

    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) * h;
        const double t_next = (k + 1 == n) ? t_end : t0 + static_cast<double>(k + 1) * h;
        y = rk4_step(profile, y, t, t_next, at_start);

        const double drift = std::abs(wronskian_of(y) - w_start);
        if (drift > traj.max_wronskian_drift) {
            traj.max_wronskian_drift = drift;
            traj.max_drift_time = t_next;
        }
        if (drift > options.soft_wronskian_limit && !traj.soft_limit_time) {
            traj.soft_limit_time = t_next;
        }
        if (!(drift <= options.hard_wronskian_limit)) {
            std::ostringstream os;
            os.precision(17);
            os << "mode integration diverged: Wronskian drift " << drift << " exceeds "
               << options.hard_wronskian_limit << " at t = " << t_next;
            throw DivergenceError(os.str(), t_next);
        }

        if ((k + 1) % sample_every == 0 || k + 1 == n) {
            ModeState s{t_next, y.u, at_start.X * y.pi};
            const double residual = std::abs(wronskian_of(y) - I);
            if (residual > traj.max_wronskian_residual) {
                traj.max_wronskian_residual = residual;
                traj.max_residual_time = t_next;
            }
            traj.samples.push_back(s);
        }
    }
    return traj;
}

ModeState advance(const CoefficientProfile& profile, const ModeState& state, double t_target,
                  double step) {
    check_step(step);
    Rhs at_start = rhs_at(profile, state.t);
    rhs_at(profile, t_target);
    const double span = t_target - state.t;
    const std::size_t n = step_count(std::abs(span), step);
    if (n == 0) {
        return state;
    }
    const double h = span / static_cast<double>(n);
    Phase y{state.u, state.udot / at_start.X};
    for (std::size_t k = 0; k < n; ++k) {
        const double t = state.t + static_cast<double>(k) * h;
        const double t_next = (k + 1 == n) ? t_target : state.t + static_cast<double>(k + 1) * h;
        y = rk4_step(profile, y, t, t_next, at_start);
    }
    return {t_target, y.u, at_start.X * y.pi};
}

} // namespace invosc
