#include "invosc/operator_algebra.hpp"

#include "invosc/errors.hpp"

#include <cmath>
#include <sstream>

namespace invosc {

namespace {
constexpr Complex I{0.0, 1.0};
}

std::string_view to_string(Picture picture) {
    switch (picture) {
    case Picture::invariant: return "invariant";
    case Picture::heisenberg: return "heisenberg";
    case Picture::schroedinger_reference: return "schroedinger-reference";
    }
    return "unknown";
}

Complex momentum_mode(const ModeState& state, double X, double Y) { return (state.udot - Y * state.u) / X; }

LadderPair invariant_ladder(const ModeState& state, double X, double Y, double hbar, double wronskian_limit) {
    const double residual = wronskian_residual(state, X);
    if (!(residual <= wronskian_limit)) {
        std::ostringstream os;
        os << "invariant ladder: Wronskian residual " << residual << " above limit " << wronskian_limit;
        throw ConsistencyError(os.str());
    }
    const Complex w = momentum_mode(state, X, Y);
    const double s = 1.0 / std::sqrt(hbar);
    const CanonicalExpansion a{I * s * std::conj(state.u), -I * s * std::conj(w)};
    const CanonicalExpansion adag{-I * s * state.u, I * s * w};
    return {a, adag};
}

Complex commutator(const CanonicalExpansion& A, const CanonicalExpansion& B, double hbar) {
    // [p, q] = -i hbar
    return I * hbar * (A.c_q * B.c_p - A.c_p * B.c_q);
}

QuadraturePair lvn_quadratures(const ModeState& state, double X, double Y, double hbar) {
    const double s = std::sqrt(hbar);
    const Complex w = momentum_mode(state, X, Y);
    return {{s * state.u, s * std::conj(state.u), Picture::invariant},
            {s * w, s * std::conj(w), Picture::invariant}};
}

QuadraturePair heisenberg_quadratures(const ModeState& state, double X, double Y, double hbar) {
    const double s = std::sqrt(hbar);
    const Complex w = momentum_mode(state, X, Y);
    return {{s * state.u, s * std::conj(state.u), Picture::heisenberg},
            {s * w, s * std::conj(w), Picture::heisenberg}};
}

QuadraturePair reference_quadratures(const ReferenceParams& ref) {
    const double sq = std::sqrt(ref.hbar * ref.X0 / (2.0 * ref.omega0));
    const double sp = std::sqrt(ref.hbar / (2.0 * ref.omega0 * ref.X0));
    return {{sq, sq, Picture::schroedinger_reference},
            {-sp * Complex(ref.Y0, ref.omega0), sp * Complex(-ref.Y0, ref.omega0), Picture::schroedinger_reference}};
}

Complex number_state_expectation(const QuadratureExpansion& A, const QuadratureExpansion& B, unsigned n) {
    // <n| a a^dag |n> = n + 1, <n| a^dag a |n> = n; the a a and a^dag a^dag terms vanish.
    const double nn = static_cast<double>(n);
    return A.c_a * B.c_adag * (nn + 1.0) + A.c_adag * B.c_a * nn;
}

CorrelatorSet correlators(const QuadraturePair& qp, unsigned n, double t) {
    const Complex q2 = number_state_expectation(qp.q, qp.q, n);
    const Complex p2 = number_state_expectation(qp.p, qp.p, n);
    const Complex sym = 0.5 * (number_state_expectation(qp.p, qp.q, n) + number_state_expectation(qp.q, qp.p, n));
    return {t, n, q2.real(), p2.real(), sym.real()};
}

CorrelatorSet correlators(const ModeState& state, double X, double Y, unsigned n, double hbar) {
    const Complex w = momentum_mode(state, X, Y);
    const double f = hbar * (2.0 * static_cast<double>(n) + 1.0);
    return {state.t, n, f * std::norm(state.u), f * std::norm(w), f * (std::conj(state.u) * w).real()};
}

Complex commutator_residual(const QuadratureExpansion& A, const QuadratureExpansion& B, double hbar) {
    if (A.picture != B.picture) {
        std::ostringstream os;
        os << "commutator of expansions in different pictures (" << to_string(A.picture) << " vs "
           << to_string(B.picture) << ")";
        throw ConstructionError(os.str());
    }
    return (A.c_a * B.c_adag - A.c_adag * B.c_a) - I * hbar;
}

double uncertainty_product(const CorrelatorSet& c) { return c.q2 * c.p2 - c.cross * c.cross; }

} // namespace invosc
