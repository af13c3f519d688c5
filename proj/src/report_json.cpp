#include "vxa/report_json.hpp"

namespace vxa {

using nlohmann::json;

json to_json(const BpCalibration& calib) {
  return json{{"theta_product_from", calib.theta_from_zero ? 0 : 1},
              {"weyl_signs", calib.weyl_signs ? "det" : "none"},
              {"q_shift", rat_str(calib.q_shift)},
              {"leading_scale", rat_str(calib.leading_scale)},
              {"theta_indexing", "3s"},
              {"z_grading", "charge"}};
}

json to_json(const DecompositionReport& rep) {
  json j{{"ell", rep.ell},
         {"agreement_order", rat_str(rep.order)},
         {"matched", rep.matched},
         {"inverse_ok", rep.inverse_ok},
         {"orthogonality_ok", rep.orthogonality_ok},
         {"calibration_choices", to_json(rep.calib)}};
  if (rep.first_mismatch)
    j["first_mismatch"] = {{"q", rat_str(rep.first_mismatch->first)}, {"z", rep.first_mismatch->second}};
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  return j;
}

json to_json(const CorollaryReport& rep) {
  json j{{"ell", rep.ell},
         {"s", rep.s},
         {"matched", rep.matched},
         {"agreement_order", rat_str(rep.order)},
         {"calibration_choices", to_json(rep.calib)}};
  if (rep.first_mismatch) j["first_mismatch"] = rat_str(*rep.first_mismatch);
  return j;
}

namespace {

bool type_matches(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

}  // namespace

std::string validate_against_schema(const json& value, const json& schema) {
  if (schema.contains("type")) {
    std::string t = schema["type"];
    if (!type_matches(value, t)) return "expected type " + t + ", got " + value.dump();
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      if (!value.contains(key.get<std::string>())) return "missing required key " + key.get<std::string>();
  if (schema.contains("properties") && value.is_object())
    for (auto& [key, sub] : schema["properties"].items())
      if (value.contains(key)) {
        std::string err = validate_against_schema(value[key], sub);
        if (!err.empty()) return key + ": " + err;
      }
  if (schema.contains("items") && value.is_array())
    for (const auto& item : value) {
      std::string err = validate_against_schema(item, schema["items"]);
      if (!err.empty()) return "items: " + err;
    }
  return {};
}

}  // namespace vxa
