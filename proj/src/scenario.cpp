#include "invosc/scenario.hpp"

#include "invosc/errors.hpp"
#include "invosc/fock_oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace invosc {

using nlohmann::json;

namespace {

const std::map<ProfileFamily, std::vector<std::string>> kRequiredParams{
    {ProfileFamily::constant, {"X0", "Y0", "Z0"}},
    {ProfileFamily::modulated, {"X0", "Y0", "Z0", "epsilon", "nu"}},
    {ProfileFamily::quench,
     {"initial.X", "initial.Y", "initial.Z", "target.X", "target.Y", "target.Z", "t_center", "width"}},
    {ProfileFamily::tabulated, {}},
};

ProfileFamily parse_family(const std::string& name) {
    for (auto f : {ProfileFamily::constant, ProfileFamily::modulated, ProfileFamily::quench, ProfileFamily::tabulated}) {
        if (to_string(f) == name) {
            return f;
        }
    }
    throw ConfigError("profile.family", "unknown family '" + name + "'");
}

double number_at(const json& obj, const std::string& key, const std::string& field) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError(field, "missing");
    }
    if (!it->is_number()) {
        throw ConfigError(field, "must be a number");
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(field, "must be finite");
    }
    return v;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(prefix + key, "unknown field");
        }
    }
}

ProfileBlock parse_profile(const json& block) {
    if (!block.is_object()) {
        throw ConfigError("profile", "must be an object");
    }
    const auto fam = block.find("family");
    if (fam == block.end() || !fam->is_string()) {
        throw ConfigError("profile.family", "missing or not a string");
    }
    ProfileBlock out;
    out.family = parse_family(fam->get<std::string>());

    switch (out.family) {
    case ProfileFamily::constant:
    case ProfileFamily::modulated: {
        std::set<std::string> allowed{"family"};
        for (const auto& key : kRequiredParams.at(out.family)) {
            out.params[key] = number_at(block, key, "profile." + key);
            allowed.insert(key);
        }
        reject_unknown(block, allowed, "profile.");
        break;
    }
    case ProfileFamily::quench: {
        for (const char* side : {"initial", "target"}) {
            const auto it = block.find(side);
            const std::string field = std::string("profile.") + side;
            if (it == block.end() || !it->is_object()) {
                throw ConfigError(field, "missing or not an object");
            }
            for (const char* c : {"X", "Y", "Z"}) {
                out.params[std::string(side) + "." + c] = number_at(*it, c, field + "." + c);
            }
            reject_unknown(*it, {"X", "Y", "Z"}, field + ".");
        }
        out.params["t_center"] = number_at(block, "t_center", "profile.t_center");
        out.params["width"] = number_at(block, "width", "profile.width");
        if (block.contains("t_return") && !block["t_return"].is_null()) {
            out.params["t_return"] = number_at(block, "t_return", "profile.t_return");
        }
        reject_unknown(block, {"family", "initial", "target", "t_center", "width", "t_return"}, "profile.");
        break;
    }
    case ProfileFamily::tabulated: {
        const auto it = block.find("rows");
        if (it == block.end() || !it->is_array()) {
            throw ConfigError("profile.rows", "missing or not an array");
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& row = (*it)[i];
            const std::string field = "profile.rows[" + std::to_string(i) + "]";
            if (!row.is_array() || row.size() != 4 || !std::all_of(row.begin(), row.end(), [](const json& v) {
                    return v.is_number();
                })) {
                throw ConfigError(field, "must be [t, X, Y, Z]");
            }
            out.rows.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(), row[3].get<double>()});
        }
        reject_unknown(block, {"family", "rows"}, "profile.");
        break;
    }
    }
    return out;
}

void check_writable_parent(const std::filesystem::path& path, const std::string& field) {
    auto parent = path.parent_path();
    if (parent.empty()) {
        parent = ".";
    }
    std::error_code ec;
    if (!std::filesystem::is_directory(parent, ec)) {
        throw ConfigError(field, "directory '" + parent.string() + "' does not exist");
    }
    if (std::filesystem::exists(path, ec) && std::filesystem::is_directory(path, ec)) {
        throw ConfigError(field, "'" + path.string() + "' is a directory");
    }
}

CoefficientSample coefficients_at(const CoefficientProfile& profile, double t) { return profile.eval(t); }

} // namespace

CoefficientProfile ProfileBlock::build() const {
    const auto get = [this](const std::string& key) {
        const auto it = params.find(key);
        if (it == params.end()) {
            throw ConfigError("profile." + key, "missing");
        }
        return it->second;
    };
    try {
        switch (family) {
        case ProfileFamily::constant: return CoefficientProfile::constant({get("X0"), get("Y0"), get("Z0")});
        case ProfileFamily::modulated:
            return CoefficientProfile::modulated({get("X0"), get("Y0"), get("Z0")}, get("epsilon"), get("nu"));
        case ProfileFamily::quench: {
            std::optional<double> t_return;
            if (params.contains("t_return")) {
                t_return = params.at("t_return");
            }
            return CoefficientProfile::quench({get("initial.X"), get("initial.Y"), get("initial.Z")},
                                              {get("target.X"), get("target.Y"), get("target.Z")}, get("t_center"),
                                              get("width"), t_return);
        }
        case ProfileFamily::tabulated: return CoefficientProfile::tabulated(rows);
        }
    } catch (const ConstructionError& e) {
        throw ConfigError("profile", e.what());
    }
    throw ConfigError("profile.family", "unsupported");
}

ScenarioConfig ScenarioConfig::parse(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("document", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("document", "must be a JSON object");
    }
    reject_unknown(doc,
                   {"profile", "t0", "t_end", "step", "sample_every", "hbar", "number_states", "oracle", "output",
                    "initial_mode_scale"},
                   "");

    ScenarioConfig cfg;
    if (!doc.contains("profile")) {
        throw ConfigError("profile", "missing");
    }
    cfg.profile = parse_profile(doc["profile"]);
    cfg.t0 = doc.contains("t0") ? number_at(doc, "t0", "t0") : 0.0;
    cfg.t_end = number_at(doc, "t_end", "t_end");
    cfg.step = number_at(doc, "step", "step");
    if (doc.contains("sample_every")) {
        const auto& v = doc["sample_every"];
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw ConfigError("sample_every", "must be a positive integer");
        }
        cfg.sample_every = v.get<std::size_t>();
    }
    if (doc.contains("hbar")) {
        cfg.hbar = number_at(doc, "hbar", "hbar");
    }
    if (doc.contains("initial_mode_scale")) {
        cfg.initial_mode_scale = number_at(doc, "initial_mode_scale", "initial_mode_scale");
    }
    if (doc.contains("number_states")) {
        const auto& ns = doc["number_states"];
        if (!ns.is_array()) {
            throw ConfigError("number_states", "must be an array of non-negative integers");
        }
        cfg.number_states.clear();
        for (const auto& v : ns) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                throw ConfigError("number_states", "must be an array of non-negative integers");
            }
            cfg.number_states.push_back(v.get<unsigned>());
        }
    }
    if (doc.contains("oracle")) {
        const auto& o = doc["oracle"];
        if (!o.is_object()) {
            throw ConfigError("oracle", "must be an object");
        }
        reject_unknown(o, {"enabled", "dimension", "step"}, "oracle.");
        if (o.contains("enabled")) {
            if (!o["enabled"].is_boolean()) {
                throw ConfigError("oracle.enabled", "must be a boolean");
            }
            cfg.oracle.enabled = o["enabled"].get<bool>();
        }
        if (o.contains("dimension")) {
            if (!o["dimension"].is_number_integer()) {
                throw ConfigError("oracle.dimension", "must be an integer");
            }
            cfg.oracle.dimension = o["dimension"].get<long>();
        }
        if (o.contains("step")) {
            cfg.oracle.step = number_at(o, "step", "oracle.step");
        }
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        if (!o.is_object()) {
            throw ConfigError("output", "must be an object");
        }
        reject_unknown(o, {"csv", "report"}, "output.");
        for (const char* key : {"csv", "report"}) {
            if (o.contains(key)) {
                if (!o[key].is_string()) {
                    throw ConfigError(std::string("output.") + key, "must be a path string");
                }
                (std::string_view(key) == "csv" ? cfg.csv_path : cfg.report_path) = o[key].get<std::string>();
            }
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

void ScenarioConfig::validate() const {
    if (!(t_end > t0)) {
        throw ConfigError("t_end", "must be greater than t0");
    }
    if (!(step > 0.0)) {
        throw ConfigError("step", "must be positive");
    }
    if (sample_every < 1) {
        throw ConfigError("sample_every", "must be at least 1");
    }
    if (!(hbar > 0.0)) {
        throw ConfigError("hbar", "must be positive");
    }
    if (!(initial_mode_scale != 0.0) || !std::isfinite(initial_mode_scale)) {
        throw ConfigError("initial_mode_scale", "must be finite and non-zero");
    }
    if (oracle.enabled) {
        if (oracle.dimension < 2) {
            throw ConfigError("oracle.dimension", "must be at least 2");
        }
        if (!(oracle.step > 0.0)) {
            throw ConfigError("oracle.step", "must be positive");
        }
        for (unsigned n : number_states) {
            if (static_cast<long>(n) >= oracle.dimension) {
                throw ConfigError("number_states", "state " + std::to_string(n) + " outside the oracle basis");
            }
        }
    }
    const auto profile_built = profile.build();
    for (double t : {t0, t_end}) {
        if (!profile_built.domain().contains(t)) {
            throw ConfigError(t == t0 ? "t0" : "t_end", "outside the profile domain");
        }
    }
    if (!(frequency_squared(profile_built.instantaneous_frequency(t0)) > 0.0)) {
        throw ConfigError("profile", "X*Z - Y^2 must be positive at t0");
    }
    if (csv_path) {
        check_writable_parent(*csv_path, "output.csv");
    }
    if (report_path) {
        check_writable_parent(*report_path, "output.report");
    }
}

RunResult run(const ScenarioConfig& config, bool strict) {
    const auto profile = config.profile.build();
    const auto ref = ReferenceParams::at(profile, config.t0, config.hbar);
    ModeState start = vacuum_init(ref);
    start.u *= config.initial_mode_scale;
    start.udot *= config.initial_mode_scale;

    RunResult result{ref, integrate(profile, start, config.t_end, config.step, config.sample_every), {}};
    const double unitarity_limit = strict ? 1e-6 : std::numeric_limits<double>::infinity();
    result.samples.reserve(result.trajectory.samples.size());
    for (const auto& s : result.trajectory.samples) {
        const auto c = coefficients_at(profile, s.t);
        SampleRecord rec;
        rec.state = s;
        rec.X = c.X;
        rec.Y = c.Y;
        rec.wronskian_residual = wronskian_residual(s, c.X);
        rec.pair = bogoliubov_coeffs(s, c.X, c.Y, ref, unitarity_limit);
        rec.unitarity_residual = unitarity_residual(rec.pair);
        if (rec.unitarity_residual <= 1e-6) {
            rec.squeeze = squeeze_params(rec.pair);
        }
        for (unsigned n : config.number_states) {
            rec.correlators.push_back(correlators(s, c.X, c.Y, n, config.hbar));
        }
        result.samples.push_back(std::move(rec));
    }
    return result;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const RunResult& result, const ScenarioConfig& config) {
    out << "t,re_u,im_u,re_udot,im_udot,wronskian_residual,re_alpha,im_alpha,re_beta,im_beta,"
           "unitarity_residual,theta,r,phi";
    for (unsigned n : config.number_states) {
        out << ",q2_" << n << ",p2_" << n << ",cross_" << n << ",uncertainty_" << n;
    }
    out << '\n';
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& rec : result.samples) {
        const auto sq = rec.squeeze.value_or(SqueezeTriple{nan, nan, nan});
        const double cols[] = {rec.state.t,        rec.state.u.real(),    rec.state.u.imag(), rec.state.udot.real(),
                               rec.state.udot.imag(), rec.wronskian_residual, rec.pair.alpha.real(),
                               rec.pair.alpha.imag(), rec.pair.beta.real(), rec.pair.beta.imag(),
                               rec.unitarity_residual, sq.theta,           sq.r,               sq.phi};
        bool first = true;
        for (double v : cols) {
            out << (first ? "" : ",") << format_double(v);
            first = false;
        }
        for (const auto& c : rec.correlators) {
            out << ',' << format_double(c.q2) << ',' << format_double(c.p2) << ',' << format_double(c.cross) << ','
                << format_double(uncertainty_product(c));
        }
        out << '\n';
    }
}

bool VerificationReport::pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.pass; });
}

const ReportEntry* VerificationReport::find(std::string_view name) const {
    const auto it = std::find_if(entries.begin(), entries.end(), [name](const ReportEntry& e) { return e.name == name; });
    return it == entries.end() ? nullptr : &*it;
}

std::string VerificationReport::to_json() const {
    json doc;
    doc["status"] = pass() ? "pass" : "fail";
    doc["entries"] = json::array();
    for (const auto& e : entries) {
        doc["entries"].push_back({{"name", e.name},
                                  {"max_residual", e.max_residual},
                                  {"tolerance", e.tolerance},
                                  {"pass", e.pass},
                                  {"worst_time", e.worst_time}});
    }
    return doc.dump(2) + "\n";
}

namespace {

// Running maximum of a residual over time.
class Tracker {
public:
    Tracker(std::string name, double tolerance) : entry_{std::move(name), 0.0, tolerance, true, 0.0} {}

    void observe(double residual, double t) {
        if (std::isnan(residual)) {
            residual = std::numeric_limits<double>::infinity();
        }
        if (residual > entry_.max_residual || (first_ && residual >= entry_.max_residual)) {
            entry_.max_residual = residual;
            entry_.worst_time = t;
        }
        first_ = false;
    }

    ReportEntry finish() const {
        ReportEntry e = entry_;
        e.pass = e.max_residual <= e.tolerance;
        return e;
    }

private:
    ReportEntry entry_;
    bool first_ = true;
};

double correlator_difference(const CorrelatorSet& a, const CorrelatorSet& b) {
    return std::max({std::abs(a.q2 - b.q2), std::abs(a.p2 - b.p2), std::abs(a.cross - b.cross)});
}

// q2 and p2 relative to themselves; cross relative to sqrt(q2 p2), its Cauchy-Schwarz bound.
double correlator_relative_error(const CorrelatorSet& closed, const CorrelatorSet& oracle) {
    const double scale_cross = std::sqrt(closed.q2 * closed.p2);
    return std::max({std::abs(oracle.q2 - closed.q2) / std::abs(closed.q2),
                     std::abs(oracle.p2 - closed.p2) / std::abs(closed.p2),
                     std::abs(oracle.cross - closed.cross) / scale_cross});
}

} // namespace

VerificationReport verify(const ScenarioConfig& config) {
    const RunResult result = run(config, false);
    const double hbar = config.hbar;
    const auto& ns = config.number_states;

    Tracker wronskian("wronskian_conservation", tolerance::wronskian);
    Tracker unitarity("unitarity", tolerance::unitarity);
    Tracker identity("reference_identity", tolerance::reference_identity);
    Tracker pictures("picture_equality", tolerance::picture_equality);
    Tracker comm_lvn("commutator_invariant", tolerance::commutator * hbar);
    Tracker comm_heis("commutator_heisenberg", tolerance::commutator * hbar);
    std::vector<Tracker> uncertainty;
    for (unsigned n : ns) {
        uncertainty.emplace_back("uncertainty_n" + std::to_string(n), tolerance::uncertainty * hbar * hbar);
    }

    const auto& first = result.samples.front();
    identity.observe(std::max(std::abs(first.pair.alpha - 1.0), std::abs(first.pair.beta)), first.state.t);

    for (const auto& rec : result.samples) {
        const double t = rec.state.t;
        wronskian.observe(rec.wronskian_residual, t);
        unitarity.observe(rec.unitarity_residual, t);
        const auto lvn = lvn_quadratures(rec.state, rec.X, rec.Y, hbar);
        const auto heis = heisenberg_quadratures(rec.state, rec.X, rec.Y, hbar);
        comm_lvn.observe(std::abs(commutator_residual(lvn.q, lvn.p, hbar)), t);
        comm_heis.observe(std::abs(commutator_residual(heis.q, heis.p, hbar)), t);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto c_lvn = correlators(lvn, ns[i], t);
            const auto c_heis = correlators(heis, ns[i], t);
            pictures.observe(correlator_difference(c_lvn, c_heis), t);
            const double expected = hbar * hbar * std::pow(2.0 * ns[i] + 1.0, 2) / 4.0;
            uncertainty[i].observe(std::abs(uncertainty_product(rec.correlators[i]) - expected), t);
        }
    }

    VerificationReport report;
    for (const auto* tr : {&wronskian, &unitarity, &identity, &pictures, &comm_lvn, &comm_heis}) {
        report.entries.push_back(tr->finish());
    }
    for (const auto& tr : uncertainty) {
        report.entries.push_back(tr.finish());
    }

    if (config.oracle.enabled) {
        const auto profile = config.profile.build();
        const FockPropagator propagator(profile, result.reference, config.oracle.dimension);
        std::vector<FockStateVector> states;
        for (unsigned n : ns) {
            states.push_back(number_state(config.oracle.dimension, n, config.t0));
        }
        Tracker norm("oracle_norm", tolerance::oracle_norm);
        std::vector<Tracker> corr;
        std::vector<Tracker> occupation;
        for (unsigned n : ns) {
            corr.emplace_back("oracle_correlators_n" + std::to_string(n), tolerance::oracle_relative);
            occupation.emplace_back("oracle_mean_occupation_n" + std::to_string(n), tolerance::oracle_relative);
        }
        for (const auto& rec : result.samples) {
            const double t = rec.state.t;
            if (t > states.front().t) {
                propagator.evolve(states, t, config.oracle.step);
            }
            for (std::size_t i = 0; i < ns.size(); ++i) {
                const double drift = std::abs(states[i].amplitudes.norm() - 1.0);
                norm.observe(drift, t);
                if (drift > tolerance::oracle_norm) {
                    corr[i].observe(std::numeric_limits<double>::infinity(), t);
                    continue;
                }
                const auto oracle = expect_correlators(states[i], propagator, ns[i]);
                corr[i].observe(correlator_relative_error(rec.correlators[i], oracle), t);
                // <n| a_H^dag a_H |n> = n + (2n + 1)|beta|^2, compared on the scale of <n| a_H a_H^dag |n>.
                const double n = ns[i];
                const double expected = n + (2.0 * n + 1.0) * std::norm(rec.pair.beta);
                occupation[i].observe(std::abs(mean_occupation(states[i]) - expected) / (expected + 1.0), t);
            }
        }
        report.entries.push_back(norm.finish());
        for (const auto& tr : corr) {
            report.entries.push_back(tr.finish());
        }
        for (const auto& tr : occupation) {
            report.entries.push_back(tr.finish());
        }
    }
    return report;
}

std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::string& parameter,
                            const std::vector<double>& values) {
    const auto& required = kRequiredParams.at(config.profile.family);
    const bool known = std::find(required.begin(), required.end(), parameter) != required.end() ||
                       (config.profile.family == ProfileFamily::quench && parameter == "t_return");
    if (!known) {
        throw ConfigError("param", "'" + parameter + "' is not a numeric field of the " +
                                       std::string(to_string(config.profile.family)) + " profile block");
    }

    std::vector<ScenarioConfig> configs;
    for (double v : values) {
        ScenarioConfig c = config;
        c.profile.params[parameter] = v;
        c.validate();
        configs.push_back(std::move(c));
    }

    const auto evaluate = [](const ScenarioConfig& cfg, double v) {
        const auto result = run(cfg);
        SweepRow row;
        row.value = v;
        const auto& last = result.samples.back();
        row.final_beta2 = std::norm(last.pair.beta);
        row.final_r = last.squeeze ? last.squeeze->r : std::asinh(std::abs(last.pair.beta));
        for (const auto& rec : result.samples) {
            row.max_wronskian_residual = std::max(row.max_wronskian_residual, rec.wronskian_residual);
            row.max_unitarity_residual = std::max(row.max_unitarity_residual, rec.unitarity_residual);
        }
        return row;
    };

    // Fixed pool of workers pulling scenario indices; rows keep input order.
    std::vector<SweepRow> rows(configs.size());
    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::min<std::size_t>(configs.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < configs.size(); i = next++) {
                rows[i] = evaluate(configs[i], values[i]);
            }
        }));
    }
    for (auto& job : pool) {
        job.get();
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "value,final_beta2,final_r,max_wronskian_residual,max_unitarity_residual\n";
    for (const auto& r : rows) {
        out << format_double(r.value) << ',' << format_double(r.final_beta2) << ',' << format_double(r.final_r) << ','
            << format_double(r.max_wronskian_residual) << ',' << format_double(r.max_unitarity_residual) << '\n';
    }
}

} // namespace invosc
