// config_json.hpp: JSON (de)serialization of ExperimentConfig.
//
// Schema: schema/config.schema.json. Amplitudes are [re, im] pairs; an env
// entry may carry "repeat": n to stand for n identical consecutive spins.

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qevent/types.hpp"

namespace qevent {

// Thrown for any schema violation; field() names the offending JSON path.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

nlohmann::json to_json(const QubitState& s);
nlohmann::json to_json(const ExperimentConfig& cfg);

QubitState qubit_from_json(const nlohmann::json& j, const std::string& path);
// Parses and validates; throws SchemaError.
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(cplx z);

}  // namespace qevent
