#include "qevent/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qevent/analytic_engine.hpp"
#include "qevent/config_json.hpp"
#include "qevent/exact_engine.hpp"
#include "qevent/measurement_limits.hpp"
#include "qevent/undecidability.hpp"

namespace qevent::cli {

using nlohmann::json;
namespace ud = undecidability;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSchema = 3;
constexpr int kExitResource = 4;
constexpr int kExitDomain = 5;
constexpr int kExitInternal = 1;

constexpr std::size_t kBranchListLimit = 64;
constexpr std::size_t kDefaultCrossoverNMax = 1000000;

// Non-finite doubles have no JSON form.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double log10_or_neg_inf(const LogMagnitude& x) {
    return x.is_zero() ? -std::numeric_limits<double>::infinity() : x.log10_mag();
}

json rho_json(const DensityMatrix2& r) {
    return json::array({json::array({complex_to_json(r(0, 0)), complex_to_json(r(0, 1))}),
                        json::array({complex_to_json(r(1, 0)), complex_to_json(r(1, 1))})});
}

json verdict_json(const ud::UndecidabilityVerdict& v) {
    return {{"verdict", ud::to_string(v.verdict)},
            {"margin_log10", number(v.margin_log10)},
            {"signal", magnitude_json(v.signal)},
            {"floor", magnitude_json(v.floor)},
            {"cross_terms_bound", magnitude_json(v.cross_terms_bound)}};
}

// Parsed run document: the experiment plus per-command extras.
struct RunInputs {
    ExperimentConfig cfg;
    std::optional<double> dtheta;
    std::optional<double> clock_theta;
    std::optional<limits::MeasuringDevice> device;
    ud::FeasibilityOptions feasibility;
    std::size_t crossover_n_max{kDefaultCrossoverNMax};
    std::vector<double> crossover_dthetas;
    bool interaction_picture{true};

    [[nodiscard]] analytic::ClockParams clock() const {
        auto c = analytic::ClockParams::for_config(cfg);
        if (clock_theta) c.theta = *clock_theta;
        return c;
    }
    [[nodiscard]] double require_dtheta() const {
        if (!dtheta) throw SchemaError("dtheta", "required by this command");
        return *dtheta;
    }
};

double positive_number(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw SchemaError(path + key, "missing required field");
    const auto& v = j.at(key);
    if (!v.is_number()) throw SchemaError(path + key, "expected a number");
    const double x = v.get<double>();
    if (!(x > 0) || !std::isfinite(x)) throw SchemaError(path + key, "must be a positive finite number");
    return x;
}

RunInputs parse_inputs(const json& doc) {
    RunInputs in;
    in.cfg = config_from_json(doc);
    if (doc.contains("dtheta")) in.dtheta = positive_number(doc, "dtheta", "");
    if (doc.contains("clock")) {
        const auto& c = doc.at("clock");
        if (!c.is_object() || !c.contains("theta") || !c.at("theta").is_number() || c.at("theta").get<double>() < 0) {
            throw SchemaError("clock.theta", "expected a non-negative number");
        }
        in.clock_theta = c.at("theta").get<double>();
    }
    if (doc.contains("device")) {
        const auto& d = doc.at("device");
        if (!d.is_object()) throw SchemaError("device", "expected an object");
        in.device = limits::MeasuringDevice{positive_number(d, "mass", "device."),
                                            positive_number(d, "radius", "device."),
                                            positive_number(d, "duration", "device.")};
    }
    if (doc.contains("feasibility")) {
        const auto& f = doc.at("feasibility");
        if (!f.is_object()) throw SchemaError("feasibility", "expected an object");
        if (f.contains("weak_coupling_threshold")) {
            in.feasibility.weak_coupling_threshold = positive_number(f, "weak_coupling_threshold", "feasibility.");
        }
        if (f.contains("dx_reference")) in.feasibility.dx_reference = positive_number(f, "dx_reference", "feasibility.");
    }
    if (doc.contains("crossover")) {
        const auto& c = doc.at("crossover");
        if (!c.is_object()) throw SchemaError("crossover", "expected an object");
        if (c.contains("N_max")) {
            if (!c.at("N_max").is_number_integer() || c.at("N_max").get<long long>() < 1) {
                throw SchemaError("crossover.N_max", "expected a positive integer");
            }
            in.crossover_n_max = c.at("N_max").get<std::size_t>();
        }
        if (c.contains("dthetas")) {
            const auto& list = c.at("dthetas");
            if (!list.is_array()) throw SchemaError("crossover.dthetas", "expected an array");
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (!list[i].is_number() || !(list[i].get<double>() > 0)) {
                    throw SchemaError("crossover.dthetas[" + std::to_string(i) + "]", "expected a positive number");
                }
                in.crossover_dthetas.push_back(list[i].get<double>());
            }
        }
    }
    if (doc.contains("interaction_picture")) {
        if (!doc.at("interaction_picture").is_boolean()) throw SchemaError("interaction_picture", "expected a boolean");
        in.interaction_picture = doc.at("interaction_picture").get<bool>();
    }
    return in;
}

json cmd_simulate(const RunInputs& in, const RunManifest& m) {
    exact::EvolveOptions opts;
    opts.interaction_picture = in.interaction_picture;
    opts.coupling = m.dephasing_mode ? exact::Coupling::dephasing : exact::Coupling::heisenberg;
    opts.n_cap = m.n_cap;
    const StateVector psi = exact::evolve_sequential(in.cfg, opts);
    return {{"command", "simulate"},
            {"N", in.cfg.n_env()},
            {"coupling", m.dephasing_mode ? "dephasing" : "heisenberg"},
            {"interaction_picture", in.interaction_picture},
            {"norm", psi.norm()},
            {"reduced_rho", rho_json(exact::partial_trace_env(psi))},
            {"M_expectation", exact::expectation_global_M(psi)},
            {"M_collapse", exact::expectation_collapsed_M(in.cfg, opts)}};
}

json cmd_analytic(const RunInputs& in) {
    const auto& cfg = in.cfg;
    const auto clock = in.clock();
    const auto state = analytic::final_state_weak_coupling(cfg);
    json out = {{"command", "analytic"},
                {"N", cfg.n_env()},
                {"z", complex_to_json(analytic::decoherence_factor_z(cfg))},
                {"z_abs", magnitude_json(analytic::decoherence_factor_abs_log(cfg))},
                {"reduced_rho", rho_json(analytic::reduced_rho(cfg))},
                {"M_unitary", analytic::expectation_M_unitary(cfg)},
                {"clock", {{"theta", clock.theta}, {"T_exp", clock.T_exp}}},
                {"damping_exponent", analytic::realclock_damping_exponent(cfg, clock)},
                {"damping", magnitude_json(log_exp_neg(analytic::realclock_damping_exponent(cfg, clock)))},
                {"warnings", state.warnings}};
    if (cfg.uniform_coupling()) {
        out["M_unitary_uniform"] = analytic::expectation_M_unitary(cfg, analytic::PhaseConvention::uniform);
        out["M_realclock"] = analytic::expectation_M_realclock(cfg, clock);
    } else {
        out["M_unitary_uniform"] = nullptr;
        out["M_realclock"] = nullptr;
    }
    if (cfg.n_env() <= kBranchListLimit) {
        json up = json::array(), down = json::array();
        for (const auto& s : state.env_up_branch) up.push_back(to_json(s));
        for (const auto& s : state.env_down_branch) down.push_back(to_json(s));
        out["env_branches"] = {{"up", up}, {"down", down}};
    }
    return out;
}

json cmd_limits(const RunInputs& in) {
    if (!in.device) throw SchemaError("device", "required by the limits command");
    const auto r = limits::delta_theta_floor(*in.device);
    json out = {{"command", "limits"},
                {"device", {{"mass", in.device->mass}, {"radius", in.device->radius}, {"duration", in.device->duration}}},
                {"bound_quantum", r.bound_quantum},
                {"bound_sr", r.bound_sr},
                {"bound_gr", r.bound_gr},
                {"binding", limits::to_string(r.binding)},
                {"binding_value", r.binding_value()},
                {"sr_consistent", r.sr_consistent},
                {"gr_consistent", r.gr_consistent}};
    if (in.dtheta) {
        const auto measured = limits::expectation_M_measured(in.cfg, in.clock(), *in.dtheta);
        out["error_budget"] = {{"dtheta", *in.dtheta},
                               {"signal", magnitude_json(measured.signal)},
                               {"leading", magnitude_json(measured.budget.leading)},
                               {"preparation_corrected", magnitude_json(measured.budget.preparation_corrected)},
                               {"leading_operator_form", magnitude_json(measured.budget.leading_operator_form)},
                               {"cross_terms_bound", magnitude_json(measured.budget.cross_terms_bound)}};
    }
    return out;
}

json cmd_feasibility(const RunInputs& in) {
    const auto r = ud::feasibility_check(in.cfg, in.feasibility);
    auto cond = [](const ud::Condition& c) {
        return json{{"value", number(c.value)}, {"pass", c.pass}, {"margin_log10", number(c.margin_log10)}};
    };
    json b = cond(r.cond_b);
    b["reference"] = r.cond_b_reference;
    json c = cond(r.cond_c);
    c["threshold"] = in.feasibility.weak_coupling_threshold;
    return {{"command", "feasibility"},
            {"f_dipolar", r.f_dipolar},
            {"cond_a", cond(r.cond_a)},
            {"cond_b", b},
            {"cond_c", c},
            {"cond_d", {{"K", r.cond_d_K}}}};
}

json cmd_decide(const RunInputs& in) {
    const double dtheta = in.require_dtheta();
    const auto d = ud::decide(in.cfg, in.clock(), dtheta);
    json out = verdict_json(d.linear);
    out["command"] = "decide";
    out["N"] = in.cfg.n_env();
    out["dtheta"] = dtheta;
    out["K"] = d.K_linear;
    if (d.power_law) {
        json p = verdict_json(*d.power_law);
        p["K"] = magnitude_json(*d.K_power_law);
        out["power_law"] = p;
    } else {
        out["power_law"] = nullptr;
    }
    out["local"] = verdict_json(ud::local_undecidability(in.cfg, dtheta));
    return out;
}

json cmd_crossover(const RunInputs& in) {
    std::vector<double> dthetas = in.crossover_dthetas;
    if (dthetas.empty()) dthetas.push_back(in.require_dtheta());
    json rows = json::array();
    for (double dt : dthetas) {
        const auto r = ud::crossover_N(in.cfg, dt, in.crossover_n_max);
        rows.push_back({{"dtheta", dt},
                        {"N_star_power_law", r.power_law ? json(*r.power_law) : json(nullptr)},
                        {"N_star_linear", r.linear ? json(*r.linear) : json(nullptr)}});
    }
    json coefficient = nullptr;
    if (in.cfg.gamma1 * in.cfg.gamma2 > 0) coefficient = magnitude_json(ud::K_lower_bound_coefficient(in.cfg));
    return {{"command", "crossover"}, {"N_max", in.crossover_n_max}, {"power_law_coefficient", coefficient}, {"rows", rows}};
}

RunInputs apply_sweep_value(RunInputs in, const std::string& parameter, double value) {
    auto& cfg = in.cfg;
    if (parameter == "N") {
        if (!(value >= 0)) throw std::domain_error("sweep: N must be >= 0");
        const auto n = static_cast<std::size_t>(std::llround(value));
        const EnvSpin proto = cfg.env.empty() ? EnvSpin{QubitState::renormalize(1.0, 1.0), 0.0} : cfg.env.front();
        cfg.env.assign(n, proto);
    } else if (parameter == "tau") {
        if (!(value > 0)) throw std::domain_error("sweep: tau must be > 0");
        cfg.tau = value;
    } else if (parameter == "dtheta") {
        in.dtheta = value;
    } else if (parameter == "f") {
        for (auto& e : cfg.env) e.f = value;
    } else if (parameter == "B_dgamma") {
        cfg.gamma1 = cfg.gamma2 + value * codata().hbar / cfg.B;
    }
    cfg.T_total = std::max(cfg.T_total, static_cast<double>(cfg.env.size()) * cfg.tau);
    return in;
}

void cmd_sweep(const RunInputs& base, const SweepAxis& axis, std::ostream& out) {
    const auto& cols = sweep_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (double value : axis.grid()) {
        const RunInputs in = apply_sweep_value(base, axis.parameter, value);
        const double dtheta = in.require_dtheta();
        const auto d = ud::decide(in.cfg, in.clock(), dtheta);
        const auto local = ud::local_undecidability(in.cfg, dtheta);
        std::vector<std::string> row = {axis.parameter,
                                        csv_number(value),
                                        std::to_string(in.cfg.n_env()),
                                        csv_number(dtheta),
                                        csv_number(d.K_linear),
                                        csv_number(log10_or_neg_inf(d.linear.signal)),
                                        csv_number(log10_or_neg_inf(d.linear.floor)),
                                        csv_number(log10_or_neg_inf(d.linear.cross_terms_bound)),
                                        ud::to_string(d.linear.verdict),
                                        csv_number(d.linear.margin_log10)};
        if (d.power_law) {
            row.push_back(csv_number(log10_or_neg_inf(*d.K_power_law)));
            row.push_back(ud::to_string(d.power_law->verdict));
            row.push_back(csv_number(d.power_law->margin_log10));
        } else {
            row.insert(row.end(), {"", "", ""});
        }
        row.push_back(csv_number(log10_or_neg_inf(local.signal)));
        row.push_back(csv_number(log10_or_neg_inf(local.floor)));
        row.push_back(ud::to_string(local.verdict));
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

void write_error(std::ostream& err, const char* kind, const std::string& message, const std::string& field = {}) {
    json e = {{"kind", kind}, {"message", message}};
    if (!field.empty()) e["field"] = field;
    err << json{{"error", e}}.dump() << '\n';
}

void write_sidecar(const RunManifest& m, const std::string& config_bytes) {
    json meta = {{"tool", "qevent"},
                 {"command", to_string(m.command)},
                 {"config_path", m.config_path},
                 {"config_fnv1a64", fnv1a_hex(config_bytes)},
                 {"constants", PhysicalConstants::version},
                 {"n_cap", m.n_cap},
                 {"dephasing_mode", m.dephasing_mode}};
    if (m.sweep_axis) {
        meta["sweep"] = {{"parameter", m.sweep_axis->parameter},
                         {"start", m.sweep_axis->start},
                         {"stop", m.sweep_axis->stop},
                         {"points", m.sweep_axis->points},
                         {"scale", m.sweep_axis->scale == SweepScale::log ? "log" : "linear"}};
    }
    std::ofstream f(*m.output_path + ".meta.json");
    f << meta.dump(2) << '\n';
}

int execute(const RunManifest& manifest, const json& doc, std::ostream& out, std::ostream& err,
            const std::string& config_bytes) {
    try {
        manifest.validate();
        const RunInputs in = parse_inputs(doc);

        std::ofstream file;
        std::ostream* sink = &out;
        if (manifest.output_path) {
            file.open(*manifest.output_path, std::ios::binary);
            if (!file) throw UsageError("cannot open output file " + *manifest.output_path);
            sink = &file;
        }

        if (manifest.command == Command::sweep) {
            cmd_sweep(in, *manifest.sweep_axis, *sink);
        } else {
            json result;
            switch (manifest.command) {
                case Command::simulate: result = cmd_simulate(in, manifest); break;
                case Command::analytic: result = cmd_analytic(in); break;
                case Command::limits: result = cmd_limits(in); break;
                case Command::feasibility: result = cmd_feasibility(in); break;
                case Command::decide: result = cmd_decide(in); break;
                case Command::crossover: result = cmd_crossover(in); break;
                case Command::sweep: break;
            }
            *sink << result.dump(2) << '\n';
        }
        if (manifest.output_path) write_sidecar(manifest, config_bytes);
        return 0;
    } catch (const UsageError& e) {
        write_error(err, "usage", e.what());
        return kExitUsage;
    } catch (const SchemaError& e) {
        write_error(err, "schema", e.what(), e.field());
        return kExitSchema;
    } catch (const exact::ResourceError& e) {
        write_error(err, "resource", e.what());
        return kExitResource;
    } catch (const std::domain_error& e) {
        write_error(err, "domain", e.what());
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        write_error(err, "domain", e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        write_error(err, "internal", e.what());
        return kExitInternal;
    }
}

}  // namespace

Command parse_command(const std::string& name) {
    static const std::pair<const char*, Command> table[] = {
        {"simulate", Command::simulate}, {"analytic", Command::analytic}, {"limits", Command::limits},
        {"feasibility", Command::feasibility}, {"decide", Command::decide}, {"crossover", Command::crossover},
        {"sweep", Command::sweep}};
    for (const auto& [n, c] : table)
        if (name == n) return c;
    throw UsageError("unknown command '" + name + "'");
}

const char* to_string(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::analytic: return "analytic";
        case Command::limits: return "limits";
        case Command::feasibility: return "feasibility";
        case Command::decide: return "decide";
        case Command::crossover: return "crossover";
        case Command::sweep: return "sweep";
    }
    return "unknown";
}

std::vector<double> SweepAxis::grid() const {
    std::vector<double> g;
    g.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        if (scale == SweepScale::linear) {
            g.push_back(start + t * (stop - start));
        } else {
            g.push_back(std::pow(10.0, std::log10(start) + t * (std::log10(stop) - std::log10(start))));
        }
    }
    return g;
}

SweepAxis parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 5) throw UsageError("--sweep expects PARAM:START:STOP:POINTS:SCALE, got '" + text + "'");

    SweepAxis axis;
    axis.parameter = parts[0];
    if (std::find(kSweepParameters.begin(), kSweepParameters.end(), axis.parameter) == kSweepParameters.end()) {
        throw UsageError("unknown sweep parameter '" + axis.parameter + "' (allowed: N, tau, dtheta, f, B_dgamma)");
    }
    try {
        std::size_t used = 0;
        axis.start = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("trailing characters");
        axis.stop = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("trailing characters");
        const long long n = std::stoll(parts[3], &used);
        if (used != parts[3].size() || n < 1) throw std::invalid_argument("points");
        axis.points = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        throw UsageError("--sweep: START/STOP must be numbers and POINTS a positive integer in '" + text + "'");
    }
    if (parts[4] == "linear") {
        axis.scale = SweepScale::linear;
    } else if (parts[4] == "log") {
        axis.scale = SweepScale::log;
        if (!(axis.start > 0) || !(axis.stop > 0)) throw UsageError("--sweep: log scale needs START, STOP > 0");
    } else {
        throw UsageError("--sweep: SCALE must be 'linear' or 'log'");
    }
    return axis;
}

void RunManifest::validate() const {
    if ((command == Command::sweep) != sweep_axis.has_value()) {
        throw UsageError(command == Command::sweep ? "the sweep command requires --sweep"
                                                   : "--sweep is only valid with the sweep command");
    }
}

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols = {
        "parameter",      "value",          "N",
        "dtheta",         "K",              "signal_log10",
        "floor_log10",    "cross_terms_log10", "verdict",
        "margin_log10",   "K_power_law_log10", "power_law_verdict",
        "power_law_margin_log10", "local_signal_log10", "local_floor_log10",
        "local_verdict"};
    return cols;
}

json magnitude_json(const LogMagnitude& x) {
    return {{"sign", x.sign()},
            {"log10", x.is_zero() ? json(nullptr) : number(x.log10_mag())},
            {"value", x.representable() ? json(x.to_double()) : json(nullptr)}};
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run_document(const RunManifest& manifest, const json& doc, std::ostream& out, std::ostream& err) {
    return execute(manifest, doc, out, err, doc.dump());
}

int run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
    std::ifstream f(manifest.config_path, std::ios::binary);
    if (!f) {
        write_error(err, "usage", "cannot read config file " + manifest.config_path);
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << f.rdbuf();
    const std::string bytes = buffer.str();
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        write_error(err, "schema", std::string("invalid JSON: ") + e.what(), "$");
        return kExitSchema;
    }
    return execute(manifest, doc, out, err, bytes);
}

}  // namespace qevent::cli
