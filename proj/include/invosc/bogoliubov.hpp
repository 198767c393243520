#pragma once

#include "invosc/mode_solver.hpp"

#include <limits>
#include <utility>

namespace invosc {

/// a_L(t) = alpha a + beta a^dag.
struct BogoliubovPair {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    double t = 0.0;
};

/// alpha = e^{i theta} cosh r, beta = e^{-i theta} e^{-i phi} sinh r.
/// Angles live in (-pi, pi]; phi = 0 whenever r = 0.
struct SqueezeTriple {
    double theta = 0.0;
    double r = 0.0;
    double phi = 0.0;
};

/// Bogoliubov coefficients of the invariant ladder operators with respect to
/// the reference ladder operators fixed at ref.t0.
///
/// Throws ConsistencyError if the unitarity residual exceeds `unitarity_limit`
/// (pass infinity to only compute).
BogoliubovPair bogoliubov_coeffs(const ModeState& state, double X, double Y, const ReferenceParams& ref,
                                 double unitarity_limit = 1e-6);

/// | |alpha|^2 - |beta|^2 - 1 |
double unitarity_residual(const BogoliubovPair& pair);

/// Phase and squeeze parameters; r comes from arcsinh|beta|.
///
/// Throws ConsistencyError if the unitarity residual exceeds `unitarity_limit`.
SqueezeTriple squeeze_params(const BogoliubovPair& pair, double unitarity_limit = 1e-6);

BogoliubovPair reconstruct(const SqueezeTriple& triple);

/// Maps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Heisenberg annihilation operator a_H = U^dag a U = alpha* a - beta a^dag,
/// returned as (coefficient of a, coefficient of a^dag).
std::pair<Complex, Complex> heisenberg_annihilation(const BogoliubovPair& pair);

} // namespace invosc
