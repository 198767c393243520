#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace invosc {

/// Coefficient triple of H = (X/2)p^2 + (Y/2)(pq + qp) + (Z/2)q^2.
struct Coefficients {
    double X = 1.0;
    double Y = 0.0;
    double Z = 1.0;
};

/// Coefficients at one instant together with the derivatives that enter the
/// classical mode equation.
struct CoefficientSample {
    double X;
    double Y;
    double Z;
    double dX;
    double dY;
};

/// Instantaneous frequency when X Z - Y^2 <= 0.
struct InvertedRegime {
    double radicand;
};

/// sqrt(X Z - Y^2) for a stable instant, otherwise the (non-positive) radicand.
using InstantaneousFrequency = std::variant<double, InvertedRegime>;

struct TabulatedRow {
    double t;
    double X;
    double Y;
    double Z;
};

enum class ProfileFamily { constant, modulated, quench, tabulated };

std::string_view to_string(ProfileFamily family);

struct TimeDomain {
    double start = -std::numeric_limits<double>::infinity();
    double end = std::numeric_limits<double>::infinity();

    bool contains(double t) const { return t >= start && t <= end; }
};

/// Time-dependent Hamiltonian coefficients X(t), Y(t), Z(t).
///
/// Built-in families carry analytic derivatives; tabulated profiles use a
/// monotone (PCHIP) cubic interpolant per column and its derivative, so they
/// are C^1. Profiles are immutable once constructed and may be shared freely
/// between threads.
class CoefficientProfile {
public:
    /// X, Y, Z held fixed.
    static CoefficientProfile constant(Coefficients c, TimeDomain domain = {});

    /// Z(t) = Z0 (1 + epsilon cos(nu t)); X and Y fixed.
    static CoefficientProfile modulated(Coefficients c, double epsilon, double nu,
                                        TimeDomain domain = {});

    /// Smooth switch from `initial` to `target` following
    /// s(t) = (1 + tanh((t - t_center)/width)) / 2.
    ///
    /// When `t_return` is given, the switch is undone around t_return with the
    /// same width, s(t) = (tanh((t - t_center)/width) - tanh((t - t_return)/width)) / 2,
    /// so the coefficients come back to `initial` at late times.
    static CoefficientProfile quench(Coefficients initial, Coefficients target,
                                     double t_center, double width,
                                     std::optional<double> t_return = std::nullopt,
                                     TimeDomain domain = {});

    /// Sampled rows with strictly increasing t; at least four rows. The domain
    /// is [first t, last t].
    static CoefficientProfile tabulated(std::vector<TabulatedRow> rows);

    ProfileFamily family() const;
    const TimeDomain& domain() const { return domain_; }

    /// Throws DomainError outside the domain.
    CoefficientSample eval(double t) const;

    InstantaneousFrequency instantaneous_frequency(double t) const;

    /// X Z - Y^2 + (dX Y - X dY)/X, the restoring term of the mode equation.
    double effective_frequency_squared(double t) const;

private:
    struct Constant {
        Coefficients c;
    };
    struct Modulated {
        Coefficients c;
        double epsilon;
        double nu;
    };
    struct Quench {
        Coefficients initial;
        Coefficients target;
        double t_center;
        double width;
        std::optional<double> t_return;
    };
    struct Tabulated;

    using Params = std::variant<Constant, Modulated, Quench, std::shared_ptr<const Tabulated>>;

    CoefficientProfile(Params params, TimeDomain domain);

    Params params_;
    TimeDomain domain_;
};

/// Radicand X Z - Y^2 of a frequency value (the square of the frequency when stable).
double frequency_squared(const InstantaneousFrequency& w);

/// Coefficients frozen at the reference time t0; they define the reference
/// ladder operators and number basis.
struct ReferenceParams {
    double t0;
    double X0;
    double Y0;
    double Z0;
    double omega0;
    double hbar;

    /// Throws ConstructionError unless X0 > 0, X0 Z0 - Y0^2 > 0 and hbar > 0.
    static ReferenceParams from_coefficients(Coefficients c, double t0 = 0.0, double hbar = 1.0);

    /// Reference data taken from `profile` at t0.
    static ReferenceParams at(const CoefficientProfile& profile, double t0, double hbar = 1.0);
};

} // namespace invosc
