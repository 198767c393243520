#include "invosc/fock_oracle.hpp"

#include "invosc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace invosc {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kNormTolerance = 1e-10;
constexpr double kImagTolerance = 1e-10;

void require_dimension(Eigen::Index N) {
    if (N < 2) {
        throw ConstructionError("Fock dimension must be at least 2");
    }
}

void require_normalized(const FockStateVector& psi) {
    const double drift = std::abs(psi.amplitudes.norm() - 1.0);
    if (!(drift <= kNormTolerance)) {
        std::ostringstream os;
        os << "state vector not normalized (|norm - 1| = " << drift << ")";
        throw ConsistencyError(os.str());
    }
}

double real_expectation(const FockStateVector& psi, const FockOperator& op, const char* name) {
    const Complex v = psi.amplitudes.dot(op * psi.amplitudes);
    if (!(std::abs(v.imag()) <= kImagTolerance * std::max(1.0, std::abs(v.real())))) {
        std::ostringstream os;
        os << "expectation of " << name << " has imaginary part " << v.imag() << " (Hermiticity violated)";
        throw ConsistencyError(os.str());
    }
    return v.real();
}

} // namespace

LadderMatrices ladder_matrices(Eigen::Index N) {
    require_dimension(N);
    FockOperator a = FockOperator::Zero(N, N);
    for (Eigen::Index n = 1; n < N; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    FockOperator adag = a.adjoint();
    return {std::move(a), std::move(adag)};
}

QuadratureMatrices quadrature_matrices(const ReferenceParams& ref, Eigen::Index N) {
    const auto [a, adag] = ladder_matrices(N);
    const double sq = std::sqrt(ref.hbar * ref.X0 / (2.0 * ref.omega0));
    const double sp = std::sqrt(ref.hbar / (2.0 * ref.omega0 * ref.X0));
    FockOperator q = sq * (a + adag);
    FockOperator p = sp * (-Complex(ref.Y0, ref.omega0) * a + Complex(-ref.Y0, ref.omega0) * adag);
    return {std::move(q), std::move(p)};
}

FockOperator hamiltonian(const CoefficientProfile& profile, double t, const ReferenceParams& ref, Eigen::Index N) {
    return FockPropagator(profile, ref, N).hamiltonian(t);
}

FockStateVector number_state(Eigen::Index N, Eigen::Index n, double t) {
    require_dimension(N);
    if (n < 0 || n >= N) {
        throw ConstructionError("number state index outside the truncated basis");
    }
    FockStateVector psi{Eigen::VectorXcd::Zero(N), t};
    psi.amplitudes(n) = 1.0;
    return psi;
}

FockPropagator::FockPropagator(CoefficientProfile profile, ReferenceParams ref, Eigen::Index N)
    : profile_(std::move(profile)), ref_(ref), N_(N), quad_(quadrature_matrices(ref, N)) {
    q2_ = quad_.q * quad_.q;
    p2_ = quad_.p * quad_.p;
    sym_ = quad_.p * quad_.q + quad_.q * quad_.p;
}

FockOperator FockPropagator::hamiltonian(double t) const {
    const auto c = profile_.eval(t);
    FockOperator H = 0.5 * c.X * p2_ + 0.5 * c.Y * sym_ + 0.5 * c.Z * q2_;
    // Symmetrize away rounding so H is Hermitian entrywise.
    return 0.5 * (H + H.adjoint());
}

void FockPropagator::apply_sector(Eigen::Index parity, std::span<FockStateVector> states, const Coefficients& c,
                                  double h) const {
    const Eigen::Index m = (N_ - parity + 1) / 2;
    const auto index = [parity](Eigen::Index k) { return parity + 2 * k; };
    const auto entry = [&](Eigen::Index r, Eigen::Index col) {
        return 0.5 * (c.X * p2_(r, col) + c.Y * sym_(r, col) + c.Z * q2_(r, col));
    };

    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
    Eigen::VectorXcd gauge(m);
    gauge(0) = 1.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        diag(k) = entry(index(k), index(k)).real();
        if (k + 1 < m) {
            // Average the two triangles so the sector is Hermitian to the last bit.
            const Complex e = 0.5 * (entry(index(k + 1), index(k)) + std::conj(entry(index(k), index(k + 1))));
            const double mag = std::abs(e);
            sub(k) = mag;
            gauge(k + 1) = mag > 0.0 ? gauge(k) * (e / mag) : gauge(k);
        }
    }

    if (m == 1) {
        const Complex phase = std::exp(-I * diag(0) * h / ref_.hbar);
        for (auto& psi : states) {
            psi.amplitudes(index(0)) *= phase;
        }
        return;
    }

    const auto S = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXd re(m, S);
    Eigen::MatrixXd im(m, S);
    for (Eigen::Index s = 0; s < S; ++s) {
        for (Eigen::Index k = 0; k < m; ++k) {
            const Complex x = std::conj(gauge(k)) * states[s].amplitudes(index(k));
            re(k, s) = x.real();
            im(k, s) = x.imag();
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& V = solver.eigenvectors();
    const Eigen::VectorXd& lambda = solver.eigenvalues();

    Eigen::MatrixXd yr = V.transpose() * re;
    Eigen::MatrixXd yi = V.transpose() * im;
    for (Eigen::Index k = 0; k < m; ++k) {
        const double angle = -lambda(k) * h / ref_.hbar;
        const double cs = std::cos(angle);
        const double sn = std::sin(angle);
        for (Eigen::Index s = 0; s < S; ++s) {
            const double a = yr(k, s);
            const double b = yi(k, s);
            yr(k, s) = cs * a - sn * b;
            yi(k, s) = sn * a + cs * b;
        }
    }
    re.noalias() = V * yr;
    im.noalias() = V * yi;
    for (Eigen::Index s = 0; s < S; ++s) {
        for (Eigen::Index k = 0; k < m; ++k) {
            states[s].amplitudes(index(k)) = gauge(k) * Complex(re(k, s), im(k, s));
        }
    }
}

void FockPropagator::step(std::span<FockStateVector> states, double t, double t_next) const {
    const double h = t_next - t;
    const auto mid = profile_.eval(t + 0.5 * h);
    const Coefficients c{mid.X, mid.Y, mid.Z};
    apply_sector(0, states, c, h);
    apply_sector(1, states, c, h);
    for (auto& psi : states) {
        psi.t = t_next;
    }
}

void FockPropagator::evolve(std::span<FockStateVector> states, double t_end, double step_size) const {
    if (!(step_size > 0.0) || !std::isfinite(step_size)) {
        throw ConstructionError("propagation step must be positive");
    }
    if (states.empty()) {
        return;
    }
    const double t0 = states.front().t;
    for (const auto& psi : states) {
        if (psi.dimension() != N_) {
            throw ConstructionError("state dimension does not match the propagator");
        }
        if (psi.t != t0) {
            throw ConstructionError("states must share a common time");
        }
    }
    const double span = t_end - t0;
    if (span == 0.0) {
        return;
    }
    const double n = std::max(1.0, std::ceil(std::abs(span) / step_size * (1.0 - 1e-12)));
    const auto count = static_cast<long long>(n);
    const double h = span / n;
    for (long long k = 0; k < count; ++k) {
        const double t = t0 + static_cast<double>(k) * h;
        const double t_next = (k + 1 == count) ? t_end : t0 + static_cast<double>(k + 1) * h;
        step(states, t, t_next);
    }
}

FockStateVector propagate(const CoefficientProfile& profile, const FockStateVector& psi0, double t_end, double step,
                          const ReferenceParams& ref) {
    require_dimension(psi0.dimension());
    require_normalized(psi0);
    FockPropagator propagator(profile, ref, psi0.dimension());
    FockStateVector psi = psi0;
    propagator.evolve(std::span(&psi, 1), t_end, step);
    return psi;
}

namespace {

CorrelatorSet correlators_from(const FockStateVector& psi, const FockOperator& q2, const FockOperator& p2,
                               const FockOperator& sym, unsigned n) {
    require_normalized(psi);
    return {psi.t, n, real_expectation(psi, q2, "q^2"), real_expectation(psi, p2, "p^2"),
            0.5 * real_expectation(psi, sym, "pq + qp")};
}

} // namespace

CorrelatorSet expect_correlators(const FockStateVector& psi, const ReferenceParams& ref, Eigen::Index N, unsigned n) {
    require_dimension(N);
    if (psi.dimension() != N) {
        throw ConstructionError("state dimension does not match the requested basis size");
    }
    const auto quad = quadrature_matrices(ref, N);
    return correlators_from(psi, quad.q * quad.q, quad.p * quad.p, quad.p * quad.q + quad.q * quad.p, n);
}

CorrelatorSet expect_correlators(const FockStateVector& psi, const FockPropagator& propagator, unsigned n) {
    if (psi.dimension() != propagator.dimension()) {
        throw ConstructionError("state dimension does not match the propagator");
    }
    return correlators_from(psi, propagator.q_squared(), propagator.p_squared(), propagator.symmetrized_pq(), n);
}

double mean_occupation(const FockStateVector& psi) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < psi.dimension(); ++k) {
        total += static_cast<double>(k) * std::norm(psi.amplitudes(k));
    }
    return total;
}

} // namespace invosc
