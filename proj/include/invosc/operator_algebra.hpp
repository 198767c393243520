#pragma once

#include "invosc/mode_solver.hpp"

#include <complex>
#include <string_view>
#include <utility>

namespace invosc {

/// Which ladder pair an expansion is written over.
///  - invariant: Schroedinger operators over the invariant pair (a_L(t), a_L^dag(t))
///  - heisenberg: Heisenberg operators over the reference pair (a, a^dag)
///  - schroedinger_reference: Schroedinger operators over the reference pair
enum class Picture { invariant, heisenberg, schroedinger_reference };

std::string_view to_string(Picture picture);

/// c_a * A + c_adag * A^dag for a ladder pair (A, A^dag) with [A, A^dag] = 1.
struct QuadratureExpansion {
    Complex c_a;
    Complex c_adag;
    Picture picture;
};

/// c_p * p + c_q * q over the canonical pair [q, p] = i hbar.
struct CanonicalExpansion {
    Complex c_p;
    Complex c_q;
};

struct CorrelatorSet {
    double t = 0.0;
    unsigned n = 0;
    double q2 = 0.0;
    double p2 = 0.0;
    double cross = 0.0; // <(pq + qp)/2>
};

struct QuadraturePair {
    QuadratureExpansion q;
    QuadratureExpansion p;
};

struct LadderPair {
    CanonicalExpansion a;
    CanonicalExpansion adag;
};

/// w = (udot - Y u)/X; the combination that multiplies the ladder operators in p.
Complex momentum_mode(const ModeState& state, double X, double Y);

/// Invariant ladder operators a_L = (i/sqrt(hbar)) [u* p - w* q] and its adjoint.
///
/// Throws ConsistencyError when |Wr - i| exceeds `wronskian_limit`.
LadderPair invariant_ladder(const ModeState& state, double X, double Y, double hbar,
                            double wronskian_limit = 1e-6);

/// [A, B] for A = c_p p + c_q q and B = d_p p + d_q q.
Complex commutator(const CanonicalExpansion& A, const CanonicalExpansion& B, double hbar);

/// q and p over (a_L, a_L^dag): q = sqrt(hbar)(u a_L + u* a_L^dag), p = sqrt(hbar)(w a_L + w* a_L^dag).
QuadraturePair lvn_quadratures(const ModeState& state, double X, double Y, double hbar);

/// q_H and p_H over (a, a^dag): q_H = U^dag q U = sqrt(hbar)(u a + u* a^dag),
/// p_H = (1/X)(dq_H/dt - Y q_H) = sqrt(hbar)(w a + w* a^dag).
///
/// Both pictures share the same coefficient numbers. The time dependence
/// sits in different operators: a_L(t) = alpha a + beta a^dag carries
/// exp(+i w0 t) in the constant limit, a_H(t) = alpha* a - beta a^dag carries
/// exp(-i w0 t).
QuadraturePair heisenberg_quadratures(const ModeState& state, double X, double Y, double hbar);

/// q and p of the reference oscillator over (a, a^dag).
QuadraturePair reference_quadratures(const ReferenceParams& ref);

/// <n| A B |n> for expansions over the same ladder pair.
Complex number_state_expectation(const QuadratureExpansion& A, const QuadratureExpansion& B, unsigned n);

/// Correlators of a quadrature pair in the number state n of its ladder pair.
CorrelatorSet correlators(const QuadraturePair& qp, unsigned n, double t = 0.0);

/// Closed-form number-state correlators: hbar|u|^2(2n+1), hbar|w|^2(2n+1),
/// hbar Re(u* w)(2n+1). Identical in the invariant and Heisenberg pictures.
CorrelatorSet correlators(const ModeState& state, double X, double Y, unsigned n, double hbar);

/// (A.c_a B.c_adag - A.c_adag B.c_a) - i hbar. Throws ConstructionError on mismatched pictures.
Complex commutator_residual(const QuadratureExpansion& A, const QuadratureExpansion& B, double hbar);

/// q2 p2 - cross^2; equals hbar^2 (2n+1)^2 / 4 for a normalized mode.
double uncertainty_product(const CorrelatorSet& c);

} // namespace invosc
