#include "invosc/bogoliubov.hpp"

#include "invosc/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace invosc {

namespace {

constexpr Complex I{0.0, 1.0};

void check_unitarity(const BogoliubovPair& pair, double limit, const char* where) {
    const double residual = unitarity_residual(pair);
    if (!(residual <= limit)) {
        std::ostringstream os;
        os << where << ": unitarity residual " << residual << " above limit " << limit << " at t = " << pair.t;
        throw ConsistencyError(os.str());
    }
}

} // namespace

BogoliubovPair bogoliubov_coeffs(const ModeState& state, double X, double Y, const ReferenceParams& ref,
                                 double unitarity_limit) {
    const Complex uc = std::conj(state.u);
    const Complex wc = (std::conj(state.udot) - Y * uc) / X;
    const Complex scale = -I * std::sqrt(ref.X0 / (2.0 * ref.omega0));
    const BogoliubovPair pair{
        scale * (Complex(ref.Y0, ref.omega0) * uc / ref.X0 + wc),
        scale * (Complex(ref.Y0, -ref.omega0) * uc / ref.X0 + wc),
        state.t,
    };
    check_unitarity(pair, unitarity_limit, "bogoliubov_coeffs");
    return pair;
}

double unitarity_residual(const BogoliubovPair& pair) {
    return std::abs(std::norm(pair.alpha) - std::norm(pair.beta) - 1.0);
}

double normalize_angle(double angle) {
    constexpr double pi = std::numbers::pi;
    double a = std::remainder(angle, 2.0 * pi);
    if (a <= -pi) {
        a += 2.0 * pi;
    }
    return a;
}

SqueezeTriple squeeze_params(const BogoliubovPair& pair, double unitarity_limit) {
    check_unitarity(pair, unitarity_limit, "squeeze_params");
    const double theta = std::arg(pair.alpha);
    const double mag = std::abs(pair.beta);
    const double r = std::asinh(mag);
    const double phi = mag == 0.0 ? 0.0 : normalize_angle(-(std::arg(pair.beta) + theta));
    return {normalize_angle(theta), r, phi};
}

BogoliubovPair reconstruct(const SqueezeTriple& triple) {
    if (!(triple.r >= 0.0)) {
        throw ConstructionError("squeeze magnitude r must be non-negative");
    }
    return {std::polar(std::cosh(triple.r), triple.theta),
            std::polar(std::sinh(triple.r), -triple.theta - triple.phi), 0.0};
}

std::pair<Complex, Complex> heisenberg_annihilation(const BogoliubovPair& pair) {
    return {std::conj(pair.alpha), -pair.beta};
}

} // namespace invosc
