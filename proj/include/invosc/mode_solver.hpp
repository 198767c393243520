#pragma once

#include "invosc/profiles.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace invosc {

using Complex = std::complex<double>;

/// Complex classical solution u(t) and its time derivative.
struct ModeState {
    double t = 0.0;
    Complex u;
    Complex udot;
};

/// Wr{u*, u} = (1/X)(u udot* - u* udot); equals i for a normalized mode.
Complex wronskian(const ModeState& state, double X);

/// |Wr - i|.
double wronskian_residual(const ModeState& state, double X);

/// Instantaneous-vacuum mode at t0: u = sqrt(X/2w), udot = -i w u.
///
/// Throws InitializationError when X Z - Y^2 <= 0 at t0.
ModeState vacuum_init(const CoefficientProfile& profile, double t0);
ModeState vacuum_init(const ReferenceParams& ref);

/// Closed-form mode of the constant oscillator frozen at the reference,
/// u(t) = sqrt(X0/2w0) exp(-i w0 (t - t0)).
ModeState analytic_mode(const ReferenceParams& ref, double t);

struct IntegratorOptions {
    double soft_wronskian_limit = 1e-9;
    double hard_wronskian_limit = 1e-6;
};

struct ModeTrajectory {
    std::vector<ModeState> samples;
    double step = 0.0;
    IntegratorOptions options;

    // Conservation drift |Wr(t) - Wr(t_start)| over every step, and where it peaked.
    double max_wronskian_drift = 0.0;
    double max_drift_time = 0.0;
    // First step whose drift crossed the soft limit, if any.
    std::optional<double> soft_limit_time;

    // |Wr - i| over the samples.
    double max_wronskian_residual = 0.0;
    double max_residual_time = 0.0;
};

/// Fourth-order Runge-Kutta integration of d/dt(udot/X) + W^2(t) u/X = 0 on
/// the first-order pair (u, pi = udot/X), with W^2 the effective frequency
/// squared of `profile`.
///
/// The span [start.t, t_end] is cut into ceil(span/step) equal steps, so the
/// last sample lands on t_end exactly. Every `sample_every`-th step and the
/// final state are recorded. The drift of the Wronskian away from its initial
/// value is checked after every step; crossing the hard limit throws
/// DivergenceError carrying the offending time.
ModeTrajectory integrate(const CoefficientProfile& profile, const ModeState& start, double t_end,
                         double step, std::size_t sample_every = 1, IntegratorOptions options = {});

/// Advances (or, for t_target < state.t, rewinds) a single state with the same
/// stepping scheme, without sampling or monitoring.
ModeState advance(const CoefficientProfile& profile, const ModeState& state, double t_target,
                  double step);

} // namespace invosc
