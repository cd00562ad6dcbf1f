#include "qevent/config_json.hpp"

#include <cmath>

namespace qevent {

using nlohmann::json;

namespace {

double number_at(const json& j, const std::string& key, const std::string& path) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!j.contains(key)) throw SchemaError(where, "missing required field");
    const auto& v = j.at(key);
    if (!v.is_number()) throw SchemaError(where, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SchemaError(where, "must be finite");
    return x;
}

cplx complex_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw SchemaError(path, "expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const QubitState& s) { return {{"up", complex_to_json(s.up())}, {"down", complex_to_json(s.down())}}; }

json to_json(const ExperimentConfig& cfg) {
    json env = json::array();
    for (const auto& e : cfg.env) {
        if (!env.empty()) {
            auto& last = env.back();
            if (qubit_from_json(last, "") == e.state && last["f"].get<double>() == e.f) {
                last["repeat"] = last.value("repeat", 1) + 1;
                continue;
            }
        }
        json entry = to_json(e.state);
        entry["f"] = e.f;
        env.push_back(std::move(entry));
    }
    for (auto& entry : env) {
        if (entry.value("repeat", 1) == 1) entry.erase("repeat");
    }
    return {{"central", to_json(cfg.central)}, {"env", env},         {"B", cfg.B},
            {"gamma1", cfg.gamma1},            {"gamma2", cfg.gamma2}, {"tau", cfg.tau},
            {"T_total", cfg.T_total},          {"m", cfg.m},         {"d", cfg.d}};
}

QubitState qubit_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object with up/down");
    if (!j.contains("up")) throw SchemaError(path + ".up", "missing required field");
    if (!j.contains("down")) throw SchemaError(path + ".down", "missing required field");
    const cplx up = complex_from_json(j.at("up"), path + ".up");
    const cplx down = complex_from_json(j.at("down"), path + ".down");
    try {
        return {up, down};
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("$", "config must be a JSON object");
    ExperimentConfig cfg;
    if (!j.contains("central")) throw SchemaError("central", "missing required field");
    cfg.central = qubit_from_json(j.at("central"), "central");

    if (!j.contains("env")) throw SchemaError("env", "missing required field");
    const auto& env = j.at("env");
    if (!env.is_array()) throw SchemaError("env", "expected an array");
    for (std::size_t i = 0; i < env.size(); ++i) {
        const std::string path = "env[" + std::to_string(i) + "]";
        EnvSpin spin{qubit_from_json(env[i], path), number_at(env[i], "f", path)};
        std::size_t repeat = 1;
        if (env[i].contains("repeat")) {
            const auto& r = env[i].at("repeat");
            if (!r.is_number_integer() || r.get<long long>() < 1) {
                throw SchemaError(path + ".repeat", "expected a positive integer");
            }
            repeat = r.get<std::size_t>();
        }
        cfg.env.insert(cfg.env.end(), repeat, spin);
    }

    cfg.B = number_at(j, "B", "");
    cfg.gamma1 = number_at(j, "gamma1", "");
    cfg.gamma2 = number_at(j, "gamma2", "");
    cfg.tau = number_at(j, "tau", "");
    cfg.T_total = number_at(j, "T_total", "");
    cfg.m = number_at(j, "m", "");
    cfg.d = number_at(j, "d", "");

    auto invariant = [&](bool ok, const char* field, const char* what) {
        if (!ok) throw SchemaError(field, what);
    };
    invariant(cfg.tau > 0, "tau", "must be > 0");
    invariant(cfg.m > 0, "m", "must be > 0");
    invariant(cfg.d > 0, "d", "must be > 0");
    invariant(cfg.T_total >= static_cast<double>(cfg.env.size()) * cfg.tau * (1.0 - 1e-12), "T_total",
              "must be >= N * tau");
    return cfg;
}

}  // namespace qevent
