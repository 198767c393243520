#pragma once

#include "invosc/operator_algebra.hpp"
#include "invosc/profiles.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace invosc {

/// Dense operator in the truncated number basis {|0>, ..., |N-1>} of the
/// reference annihilation operator.
using FockOperator = Eigen::MatrixXcd;

struct FockStateVector {
    Eigen::VectorXcd amplitudes;
    double t = 0.0;

    Eigen::Index dimension() const { return amplitudes.size(); }
};

struct LadderMatrices {
    FockOperator a;
    FockOperator adag;
};

struct QuadratureMatrices {
    FockOperator q;
    FockOperator p;
};

/// a[n-1, n] = sqrt(n). Throws ConstructionError for N < 2.
LadderMatrices ladder_matrices(Eigen::Index N);

/// q = sqrt(hbar X0/2w0)(a + a^dag), p = sqrt(hbar/2w0X0)[-(i w0 + Y0) a + (i w0 - Y0) a^dag].
QuadratureMatrices quadrature_matrices(const ReferenceParams& ref, Eigen::Index N);

/// H(t) = (X/2) p^2 + (Y/2)(pq + qp) + (Z/2) q^2 built from truncated q, p.
FockOperator hamiltonian(const CoefficientProfile& profile, double t, const ReferenceParams& ref, Eigen::Index N);

/// |n> in dimension N at time t.
FockStateVector number_state(Eigen::Index N, Eigen::Index n, double t = 0.0);

/// Schroedinger propagation by midpoint exponentials,
///   psi(t + h) = exp(-(i/hbar) H(t + h/2) h) psi(t),
/// each evaluated through an exact eigendecomposition of H(t + h/2).
///
/// The quadratic Hamiltonian only couples basis states of equal parity and,
/// inside one parity sector, neighbours n <-> n +- 2; each sector is a
/// Hermitian tridiagonal matrix. A diagonal phase gauge turns it into a real
/// symmetric tridiagonal one, which is diagonalized directly. This is the same
/// exact exponential as diagonalizing the dense H, at a fraction of the cost.
class FockPropagator {
public:
    FockPropagator(CoefficientProfile profile, ReferenceParams ref, Eigen::Index N);

    Eigen::Index dimension() const { return N_; }
    const ReferenceParams& reference() const { return ref_; }
    const QuadratureMatrices& quadratures() const { return quad_; }
    const FockOperator& q_squared() const { return q2_; }
    const FockOperator& p_squared() const { return p2_; }
    const FockOperator& symmetrized_pq() const { return sym_; }

    FockOperator hamiltonian(double t) const;

    /// One exponential step of every state from t to t_next.
    void step(std::span<FockStateVector> states, double t, double t_next) const;

    /// Advances every state (all at the same time) to t_end in ceil(span/step) equal steps.
    void evolve(std::span<FockStateVector> states, double t_end, double step) const;

private:
    void apply_sector(Eigen::Index parity, std::span<FockStateVector> states, const Coefficients& c,
                      double h) const;

    CoefficientProfile profile_;
    ReferenceParams ref_;
    Eigen::Index N_;
    QuadratureMatrices quad_;
    FockOperator q2_;
    FockOperator p2_;
    FockOperator sym_; // pq + qp
};

/// Propagates a single normalized state from psi0.t to t_end.
///
/// Throws ConstructionError on N < 2 or a non-positive step, and
/// ConsistencyError when psi0 is not normalized within 1e-10.
FockStateVector propagate(const CoefficientProfile& profile, const FockStateVector& psi0, double t_end, double step,
                          const ReferenceParams& ref);

/// <q^2>, <p^2>, <(pq + qp)/2> evaluated with the truncated matrices.
///
/// Throws ConstructionError on dimension mismatch and ConsistencyError when
/// an expectation has an imaginary part above 1e-10 (relative to its size).
CorrelatorSet expect_correlators(const FockStateVector& psi, const ReferenceParams& ref, Eigen::Index N, unsigned n = 0);

/// Same, reusing the propagator's matrices.
CorrelatorSet expect_correlators(const FockStateVector& psi, const FockPropagator& propagator, unsigned n = 0);

/// <psi| a^dag a |psi>.
double mean_occupation(const FockStateVector& psi);

} // namespace invosc
