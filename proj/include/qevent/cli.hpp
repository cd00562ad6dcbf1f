// cli.hpp: command-line front end: run manifests, config ingestion and the
// JSON / CSV emitters behind the qevent tool.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qevent/log_magnitude.hpp"

namespace qevent::cli {

enum class Command { simulate, analytic, limits, feasibility, decide, crossover, sweep };

Command parse_command(const std::string& name);
const char* to_string(Command c);

enum class SweepScale { linear, log };

struct SweepAxis {
    std::string parameter;  // one of kSweepParameters
    double start{};
    double stop{};
    std::size_t points{};
    SweepScale scale{SweepScale::linear};

    [[nodiscard]] std::vector<double> grid() const;
};

inline const std::vector<std::string> kSweepParameters = {"N", "tau", "dtheta", "f", "B_dgamma"};

// PARAM:START:STOP:POINTS:SCALE, e.g. "N:1:100:100:linear".
SweepAxis parse_sweep(const std::string& text);

struct RunManifest {
    std::string config_path;
    Command command{Command::decide};
    std::optional<std::string> output_path;
    std::optional<SweepAxis> sweep_axis;
    std::size_t n_cap{12};
    bool dephasing_mode{false};

    // sweep_axis present iff command == sweep; throws UsageError.
    void validate() const;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fixed CSV header for sweeps.
const std::vector<std::string>& sweep_columns();

// {"sign", "log10", "value"}; value is null when the linear form under/overflows.
nlohmann::json magnitude_json(const LogMagnitude& x);

// Runs one command. Results go to `out` (JSON, or CSV for sweeps) unless the
// manifest names an output file; errors go to `err` as a JSON object.
// Returns the process exit status.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

// Same, on an already-parsed config document (used by tests).
int run_document(const RunManifest& manifest, const nlohmann::json& doc, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a, hex encoded; identifies the config in run metadata.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace qevent::cli
