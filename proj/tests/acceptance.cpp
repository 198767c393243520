// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "invosc/bogoliubov.hpp"
#include "invosc/fock_oracle.hpp"
#include "invosc/operator_algebra.hpp"
#include "invosc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace invosc;

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kDefaultStep = 1e-3;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::vector<CoefficientProfile> smooth_profiles() {
    return {
        CoefficientProfile::constant({1, 0, 1}),
        CoefficientProfile::constant({2, 1, 1}),
        CoefficientProfile::modulated({1, 0, 1}, 0.1, 2.0),
        CoefficientProfile::modulated({2, 0.5, 1}, 0.2, 1.3),
        CoefficientProfile::quench({1, 0, 1}, {1, 0, 4}, 5.0, 1.0),
        CoefficientProfile::quench({1, 0.3, 1}, {1.5, -0.2, 2}, 20.0, 2.0, 60.0),
    };
}

const std::vector<ModeTrajectory>& smooth_trajectories() {
    static const std::vector<ModeTrajectory> trajs = [] {
        std::vector<ModeTrajectory> out;
        for (const auto& p : smooth_profiles()) {
            out.push_back(integrate(p, vacuum_init(p, 0.0), 100.0, kDefaultStep, 100));
        }
        return out;
    }();
    return trajs;
}

Outcome constant_exactness() {
    double alpha_err = 0.0;
    double beta_max = 0.0;
    for (Coefficients c : {Coefficients{1, 0, 1}, Coefficients{2, 1, 1}}) {
        const auto profile = CoefficientProfile::constant(c);
        const auto ref = ReferenceParams::at(profile, 0.0);
        const auto traj = integrate(profile, vacuum_init(ref), 10.0, 1e-3);
        for (const auto& s : traj.samples) {
            const auto pair = bogoliubov_coeffs(s, c.X, c.Y, ref);
            alpha_err = std::max(alpha_err, std::abs(pair.alpha - std::exp(I * ref.omega0 * s.t)));
            beta_max = std::max(beta_max, std::abs(pair.beta));
        }
    }
    return {alpha_err <= 1e-8 && beta_max <= 1e-9,
            "max|alpha - e^{i w0 t}| = " + fmt(alpha_err) + " (<= 1e-8), max|beta| = " + fmt(beta_max) + " (<= 1e-9)"};
}

Outcome wronskian_conservation() {
    double worst = 0.0;
    const auto profiles = smooth_profiles();
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        for (const auto& s : smooth_trajectories()[i].samples) {
            worst = std::max(worst, wronskian_residual(s, profiles[i].eval(s.t).X));
        }
        worst = std::max(worst, smooth_trajectories()[i].max_wronskian_drift);
    }
    return {worst <= 1e-9, std::to_string(profiles.size()) + " profiles over [0, 100], max residual " + fmt(worst) +
                               " (<= 1e-9)"};
}

Outcome unitarity() {
    double worst = 0.0;
    const auto profiles = smooth_profiles();
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto ref = ReferenceParams::at(profiles[i], 0.0);
        for (const auto& s : smooth_trajectories()[i].samples) {
            const auto c = profiles[i].eval(s.t);
            worst = std::max(worst, unitarity_residual(bogoliubov_coeffs(s, c.X, c.Y, ref)));
        }
    }
    return {worst <= 1e-9, "max ||alpha|^2 - |beta|^2 - 1| = " + fmt(worst) + " (<= 1e-9)"};
}

Outcome picture_equality() {
    double diff = 0.0;
    double comm = 0.0;
    const auto profiles = smooth_profiles();
    for (double hbar : {1.0, 0.5}) {
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            for (const auto& s : smooth_trajectories()[i].samples) {
                const auto c = profiles[i].eval(s.t);
                const auto lvn = lvn_quadratures(s, c.X, c.Y, hbar);
                const auto heis = heisenberg_quadratures(s, c.X, c.Y, hbar);
                comm = std::max({comm, std::abs(commutator_residual(lvn.q, lvn.p, hbar)) / hbar,
                                 std::abs(commutator_residual(heis.q, heis.p, hbar)) / hbar});
                for (unsigned n : {0u, 1u, 2u, 5u}) {
                    const auto a = correlators(lvn, n, s.t);
                    const auto b = correlators(heis, n, s.t);
                    diff = std::max({diff, std::abs(a.q2 - b.q2), std::abs(a.p2 - b.p2), std::abs(a.cross - b.cross)});
                }
            }
        }
    }
    return {diff <= 1e-14 && comm <= 1e-12, "max correlator difference " + fmt(diff) +
                                                " (<= 1e-14), max commutator residual / hbar " + fmt(comm) +
                                                " (<= 1e-12)"};
}

Outcome uncertainty_identity() {
    double worst = 0.0;
    const auto profiles = smooth_profiles();
    for (double hbar : {1.0, 0.5}) {
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            for (const auto& s : smooth_trajectories()[i].samples) {
                const auto c = profiles[i].eval(s.t);
                for (unsigned n : {0u, 1u, 2u, 5u}) {
                    const double expected = hbar * hbar * (2.0 * n + 1) * (2.0 * n + 1) / 4.0;
                    worst = std::max(worst, std::abs(uncertainty_product(correlators(s, c.X, c.Y, n, hbar)) - expected));
                }
            }
        }
    }
    return {worst <= 1e-9, "n in {0, 1, 2, 5}, max |q2 p2 - cross^2 - hbar^2 (2n+1)^2/4| = " + fmt(worst) +
                               " (<= 1e-9)"};
}

Outcome oracle_agreement() {
    ScenarioConfig cfg;
    cfg.profile.family = ProfileFamily::quench;
    cfg.profile.params = {{"initial.X", 1.0}, {"initial.Y", 0.0}, {"initial.Z", 1.0}, {"target.X", 1.0},
                          {"target.Y", 0.0},  {"target.Z", 4.0},  {"t_center", 5.0},  {"width", 1.0}};
    cfg.t0 = 0.0;
    cfg.t_end = 10.0;
    cfg.step = kDefaultStep;
    cfg.sample_every = 100;
    cfg.number_states = {0, 1};
    cfg.oracle = {true, 64, 1e-3};
    cfg.validate();
    const auto report = verify(cfg);
    double worst = 0.0;
    bool ok = true;
    for (const char* name : {"oracle_norm", "oracle_correlators_n0", "oracle_correlators_n1"}) {
        const auto* e = report.find(name);
        ok = ok && e != nullptr && e->pass;
        if (e != nullptr && std::string(name) != "oracle_norm") {
            worst = std::max(worst, e->max_residual);
        }
    }
    return {ok && worst <= 1e-4, "quench N = 64, n in {0, 1}, 101 samples, max relative error " + fmt(worst) +
                                     " (<= 1e-4)"};
}

double final_beta2(double nu, double t_end) {
    const auto profile = CoefficientProfile::modulated({1, 0, 1}, 0.1, nu);
    const auto ref = ReferenceParams::at(profile, 0.0);
    const auto traj = integrate(profile, vacuum_init(ref), t_end, kDefaultStep, 1000);
    const auto& s = traj.samples.back();
    const auto c = profile.eval(s.t);
    return std::norm(bogoliubov_coeffs(s, c.X, c.Y, ref).beta);
}

Outcome squeezing_cross_check() {
    const double t_end = 50.0;
    const double beta2 = final_beta2(2.0, t_end);
    const auto profile = CoefficientProfile::modulated({1, 0, 1}, 0.1, 2.0);
    const auto ref = ReferenceParams::at(profile, 0.0);
    const auto psi = propagate(profile, number_state(128, 0), t_end, 5e-3, ref);
    const double occupation = mean_occupation(psi);
    const double rel = std::abs(occupation - beta2) / beta2;
    const double off = final_beta2(3.7, t_end);
    return {rel <= 1e-4 && beta2 > off, "|beta(50)|^2 = " + fmt(beta2) + ", oracle N = 128 " + fmt(occupation) +
                                            ", relative " + fmt(rel) + " (<= 1e-4); nu = 3.7 gives " + fmt(off)};
}

Outcome squeeze_round_trip() {
    constexpr double pi = std::numbers::pi;
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> mag(0.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SqueezeTriple in{angle(rng), mag(rng), angle(rng)};
        const auto out = squeeze_params(reconstruct(in));
        // Angles are compared on the circle, on the scale of one radian.
        const double dtheta = std::abs(normalize_angle(out.theta - in.theta)) / std::max(1.0, std::abs(in.theta));
        const double dphi = std::abs(normalize_angle(out.phi - in.phi)) / std::max(1.0, std::abs(in.phi));
        const double dr = std::abs(out.r - in.r) / in.r;
        worst = std::max({worst, dtheta, dphi, dr});
    }
    return {worst <= 1e-12, "1000 triples with r <= 5, max relative error " + fmt(worst) + " (<= 1e-12)"};
}

Outcome late_time_freeze() {
    const auto profile = CoefficientProfile::quench({1, 0, 1}, {1, 0, 4}, 10.0, 0.5, 25.0);
    const auto ref = ReferenceParams::at(profile, 0.0);
    const double t_end = 50.0;
    const auto traj = integrate(profile, vacuum_init(ref), t_end, kDefaultStep, 10);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& s : traj.samples) {
        if (s.t < 0.8 * t_end) {
            continue;
        }
        const auto c = profile.eval(s.t);
        const double b = std::abs(bogoliubov_coeffs(s, c.X, c.Y, ref).beta);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    const double drift = hi - lo;
    return {drift <= 1e-8 && hi > 1e-3,
            "quench out at t = 10 and back at t = 25, |beta| = " + fmt(hi) + ", drift over [40, 50] " + fmt(drift) + " (<= 1e-8)"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 constant-coefficient exactness", constant_exactness},
        {"2 wronskian conservation", wronskian_conservation},
        {"3 unitarity", unitarity},
        {"4 picture equality and commutator", picture_equality},
        {"5 uncertainty identity", uncertainty_identity},
        {"6 oracle correlator agreement", oracle_agreement},
        {"7 squeezing cross-check", squeezing_cross_check},
        {"8 squeeze round-trip", squeeze_round_trip},
        {"9 late-time freeze", late_time_freeze},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o{false, ""};
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
