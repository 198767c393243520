#pragma once

#include "invosc/bogoliubov.hpp"
#include "invosc/mode_solver.hpp"
#include "invosc/operator_algebra.hpp"
#include "invosc/profiles.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace invosc {

/// Profile block of a scenario document, kept in a flat parameter map so
/// sweeps can address any numeric field by name.
///
///   constant / modulated: X0, Y0, Z0 (+ epsilon, nu)
///   quench:               initial.X, initial.Y, initial.Z, target.X, target.Y,
///                         target.Z, t_center, width (+ optional t_return)
///   tabulated:            rows of [t, X, Y, Z]
struct ProfileBlock {
    ProfileFamily family = ProfileFamily::constant;
    std::map<std::string, double> params;
    std::vector<TabulatedRow> rows;

    CoefficientProfile build() const;
};

struct OracleConfig {
    bool enabled = false;
    long dimension = 64;
    double step = 1e-3;
};

struct ScenarioConfig {
    ProfileBlock profile;
    double t0 = 0.0;
    double t_end = 0.0;
    double step = 1e-3;
    std::size_t sample_every = 1;
    double hbar = 1.0;
    std::vector<unsigned> number_states{0};
    OracleConfig oracle;
    std::optional<std::filesystem::path> csv_path;
    std::optional<std::filesystem::path> report_path;
    // Multiplies the vacuum mode (u, udot) before integration; 1 leaves it
    // normalized. Used to exercise the verification report.
    double initial_mode_scale = 1.0;

    /// Parses and validates a JSON document. Throws ConfigError naming the field.
    static ScenarioConfig parse(std::string_view json_text);
    static ScenarioConfig load(const std::filesystem::path& path);

    /// Re-checks the invariants (after programmatic edits). Throws ConfigError.
    void validate() const;
};

/// Everything emitted for one trajectory sample.
struct SampleRecord {
    ModeState state;
    double X = 0.0;
    double Y = 0.0;
    double wronskian_residual = 0.0;
    BogoliubovPair pair;
    double unitarity_residual = 0.0;
    std::optional<SqueezeTriple> squeeze; // empty when unitarity is broken
    std::vector<CorrelatorSet> correlators; // one per requested n
};

struct RunResult {
    ReferenceParams reference;
    ModeTrajectory trajectory;
    std::vector<SampleRecord> samples;
};

/// Integrates the mode and evaluates every closed-form quantity at each sample.
///
/// With `strict`, a unitarity residual above the 1e-6 hard limit throws
/// ConsistencyError; otherwise it is recorded and the squeeze triple is left empty.
RunResult run(const ScenarioConfig& config, bool strict = true);

/// t, re_u, im_u, re_udot, im_udot, wronskian_residual, re_alpha, im_alpha,
/// re_beta, im_beta, unitarity_residual, theta, r, phi, then q2_n, p2_n,
/// cross_n, uncertainty_n per requested n. 17 significant digits.
void write_csv(std::ostream& out, const RunResult& result, const ScenarioConfig& config);

struct ReportEntry {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    double worst_time = 0.0;
};

struct VerificationReport {
    std::vector<ReportEntry> entries;

    bool pass() const;
    const ReportEntry* find(std::string_view name) const;
    std::string to_json() const;
};

/// Tolerances of the verification suite.
namespace tolerance {
inline constexpr double wronskian = 1e-9;
inline constexpr double unitarity = 1e-9;
inline constexpr double reference_identity = 1e-14;
inline constexpr double picture_equality = 1e-14;
inline constexpr double commutator = 1e-12; // times hbar
inline constexpr double uncertainty = 1e-9; // times hbar^2
inline constexpr double oracle_relative = 1e-4;
inline constexpr double oracle_norm = 1e-10;
} // namespace tolerance

/// Runs the invariant suite (and the Fock-space oracle when enabled).
VerificationReport verify(const ScenarioConfig& config);

struct SweepRow {
    double value = 0.0;
    double final_beta2 = 0.0;
    double final_r = 0.0;
    double max_wronskian_residual = 0.0;
    double max_unitarity_residual = 0.0;
};

/// One scenario per value of the named profile parameter; scenarios run concurrently.
/// Throws ConfigError for an unknown parameter.
std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::string& parameter,
                            const std::vector<double>& values);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// "%.17g"
std::string format_double(double v);

} // namespace invosc
