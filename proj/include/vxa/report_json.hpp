#pragma once

#include <json.hpp>

#include "vxa/characters.hpp"

namespace vxa {

// JSON forms of the verification reports (shared by the CLI and tests; the
// shapes are pinned by data/report_schema.json).
nlohmann::json to_json(const BpCalibration& calib);
nlohmann::json to_json(const DecompositionReport& rep);
nlohmann::json to_json(const CorollaryReport& rep);

// Minimal structural validator for the shipped schema dialect: `type`
// (object/array/string/boolean/integer), `required`, `properties`, `items`.
// Returns an empty string when `value` conforms, else a description.
std::string validate_against_schema(const nlohmann::json& value, const nlohmann::json& schema);

}  // namespace vxa
