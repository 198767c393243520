#include "invosc/profiles.hpp"

#include "invosc/errors.hpp"

// Boost 1.74's pchip.hpp calls unqualified isnan; <math.h> puts it in the global namespace.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <cmath>
#include <sstream>
#include <string>

namespace invosc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_X(double X, const char* where) {
    if (!(X > 0.0) || !std::isfinite(X)) {
        std::ostringstream os;
        os << where << ": X must be positive and finite, got " << X;
        throw ConstructionError(os.str());
    }
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ConstructionError(std::string(name) + " must be finite");
    }
}

void require_valid_domain(const TimeDomain& d) {
    if (std::isnan(d.start) || std::isnan(d.end) || !(d.start <= d.end)) {
        throw ConstructionError("profile domain must satisfy start <= end");
    }
}

double lerp(double a, double b, double s) { return a + (b - a) * s; }

} // namespace

struct CoefficientProfile::Tabulated {
    using Interpolant = boost::math::interpolators::pchip<std::vector<double>>;
    Interpolant X;
    Interpolant Y;
    Interpolant Z;
};

std::string_view to_string(ProfileFamily family) {
    switch (family) {
    case ProfileFamily::constant: return "constant";
    case ProfileFamily::modulated: return "modulated";
    case ProfileFamily::quench: return "quench";
    case ProfileFamily::tabulated: return "tabulated";
    }
    return "unknown";
}

CoefficientProfile::CoefficientProfile(Params params, TimeDomain domain)
    : params_(std::move(params)), domain_(domain) {}

CoefficientProfile CoefficientProfile::constant(Coefficients c, TimeDomain domain) {
    require_positive_X(c.X, "constant profile");
    require_finite(c.Y, "Y");
    require_finite(c.Z, "Z");
    require_valid_domain(domain);
    return CoefficientProfile(Constant{c}, domain);
}

CoefficientProfile CoefficientProfile::modulated(Coefficients c, double epsilon, double nu,
                                                 TimeDomain domain) {
    require_positive_X(c.X, "modulated profile");
    require_finite(c.Y, "Y0");
    require_finite(c.Z, "Z0");
    require_finite(epsilon, "epsilon");
    require_finite(nu, "nu");
    require_valid_domain(domain);
    return CoefficientProfile(Modulated{c, epsilon, nu}, domain);
}

CoefficientProfile CoefficientProfile::quench(Coefficients initial, Coefficients target,
                                              double t_center, double width,
                                              std::optional<double> t_return,
                                              TimeDomain domain) {
    require_positive_X(initial.X, "quench profile (initial)");
    require_positive_X(target.X, "quench profile (target)");
    for (double v : {initial.Y, initial.Z, target.Y, target.Z, t_center}) {
        require_finite(v, "quench coefficient");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw ConstructionError("quench profile: width must be positive");
    }
    if (t_return && !(*t_return > t_center)) {
        throw ConstructionError("quench profile: t_return must exceed t_center");
    }
    require_valid_domain(domain);
    return CoefficientProfile(Quench{initial, target, t_center, width, t_return}, domain);
}

CoefficientProfile CoefficientProfile::tabulated(std::vector<TabulatedRow> rows) {
    if (rows.size() < 4) {
        throw ConstructionError("tabulated profile: at least four rows are required");
    }
    std::vector<double> t, x, y, z;
    t.reserve(rows.size());
    x.reserve(rows.size());
    y.reserve(rows.size());
    z.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        require_finite(r.t, "tabulated t");
        require_finite(r.Y, "tabulated Y");
        require_finite(r.Z, "tabulated Z");
        require_positive_X(r.X, "tabulated profile");
        if (i > 0 && !(r.t > rows[i - 1].t)) {
            std::ostringstream os;
            os << "tabulated profile: times must be strictly increasing (row " << i << ")";
            throw ConstructionError(os.str());
        }
        t.push_back(r.t);
        x.push_back(r.X);
        y.push_back(r.Y);
        z.push_back(r.Z);
    }
    const TimeDomain domain{t.front(), t.back()};
    auto tx = t;
    auto ty = t;
    auto table = std::make_shared<const Tabulated>(Tabulated{
        Tabulated::Interpolant(std::move(tx), std::move(x)),
        Tabulated::Interpolant(std::move(ty), std::move(y)),
        Tabulated::Interpolant(std::move(t), std::move(z)),
    });
    return CoefficientProfile(std::move(table), domain);
}

ProfileFamily CoefficientProfile::family() const {
    return std::visit(overloaded{
                          [](const Constant&) { return ProfileFamily::constant; },
                          [](const Modulated&) { return ProfileFamily::modulated; },
                          [](const Quench&) { return ProfileFamily::quench; },
                          [](const std::shared_ptr<const Tabulated>&) { return ProfileFamily::tabulated; },
                      },
                      params_);
}

CoefficientSample CoefficientProfile::eval(double t) const {
    if (!domain_.contains(t)) {
        std::ostringstream os;
        os.precision(17);
        os << "time " << t << " outside profile domain [" << domain_.start << ", " << domain_.end << "]";
        throw DomainError(os.str());
    }
    return std::visit(
        overloaded{
            [](const Constant& p) { return CoefficientSample{p.c.X, p.c.Y, p.c.Z, 0.0, 0.0}; },
            [t](const Modulated& p) {
                return CoefficientSample{p.c.X, p.c.Y, p.c.Z * (1.0 + p.epsilon * std::cos(p.nu * t)),
                                         0.0, 0.0};
            },
            [t](const Quench& p) {
                double s = 0.0;
                double ds = 0.0;
                const double th = std::tanh((t - p.t_center) / p.width);
                if (p.t_return) {
                    const double tr = std::tanh((t - *p.t_return) / p.width);
                    s = 0.5 * (th - tr);
                    ds = 0.5 * ((1.0 - th * th) - (1.0 - tr * tr)) / p.width;
                } else {
                    s = 0.5 * (1.0 + th);
                    ds = 0.5 * (1.0 - th * th) / p.width;
                }
                const auto& a = p.initial;
                const auto& b = p.target;
                return CoefficientSample{lerp(a.X, b.X, s), lerp(a.Y, b.Y, s), lerp(a.Z, b.Z, s),
                                         (b.X - a.X) * ds, (b.Y - a.Y) * ds};
            },
            [t](const std::shared_ptr<const Tabulated>& p) {
                return CoefficientSample{p->X(t), p->Y(t), p->Z(t), p->X.prime(t), p->Y.prime(t)};
            },
        },
        params_);
}

InstantaneousFrequency CoefficientProfile::instantaneous_frequency(double t) const {
    const auto s = eval(t);
    const double radicand = s.X * s.Z - s.Y * s.Y;
    if (radicand > 0.0) {
        return std::sqrt(radicand);
    }
    return InvertedRegime{radicand};
}

double CoefficientProfile::effective_frequency_squared(double t) const {
    const auto s = eval(t);
    return s.X * s.Z - s.Y * s.Y + (s.dX * s.Y - s.X * s.dY) / s.X;
}

double frequency_squared(const InstantaneousFrequency& w) {
    return std::visit(overloaded{
                          [](double omega) { return omega * omega; },
                          [](const InvertedRegime& inv) { return inv.radicand; },
                      },
                      w);
}

ReferenceParams ReferenceParams::from_coefficients(Coefficients c, double t0, double hbar) {
    if (!(c.X > 0.0)) {
        throw ConstructionError("reference X0 must be positive");
    }
    const double w2 = c.X * c.Z - c.Y * c.Y;
    if (!(w2 > 0.0)) {
        std::ostringstream os;
        os << "reference frequency squared X0*Z0 - Y0^2 must be positive, got " << w2;
        throw ConstructionError(os.str());
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw ConstructionError("hbar must be positive");
    }
    return ReferenceParams{t0, c.X, c.Y, c.Z, std::sqrt(w2), hbar};
}

ReferenceParams ReferenceParams::at(const CoefficientProfile& profile, double t0, double hbar) {
    const auto s = profile.eval(t0);
    return from_coefficients({s.X, s.Y, s.Z}, t0, hbar);
}

} // namespace invosc
