#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "trialalloc/model.hpp"

namespace trialalloc {

// Canonical JSON encoding of DesignSpec, shared by the CLI `--spec` files and
// the HTTP API:
//
//   {
//     "trial_kind": "noninferiority_two_arm" | "superiority_multiarm",
//     "control":   {"tag": "binomial", "pi": 0.008},
//     "treatment": {"tag": "binomial", "pi": 0.008}      (NI)
//                | [{"tag": "normal", "mean": 0, "sd": 1}, ...]   (multi-arm),
//     "margin": {"kind": "additive" | "multiplicative", "value": 0.004},
//     "rates": {"alpha": 0.025, "power": 0.9},
//     "direction": "higher_favorable" | "lower_favorable",      optional
//     "variance_eval_point": "null_boundary" | "alternative"    optional
//   }
//
// Decoding reports malformed input as ValidationError with the JSON field path.
// Keys not listed above are ignored so request bodies can carry extra fields.

nlohmann::json to_json(const OutcomeFamily& family);
nlohmann::json to_json(const Margin& margin);
nlohmann::json to_json(const ErrorRates& rates);
nlohmann::json to_json(const DesignSpec& spec);

OutcomeFamily family_from_json(const nlohmann::json& j, std::string_view path);
Margin margin_from_json(const nlohmann::json& j, std::string_view path = "margin");
ErrorRates rates_from_json(const nlohmann::json& j, std::string_view path = "rates");
DesignSpec design_spec_from_json(const nlohmann::json& j);

/// Parses text, mapping syntax errors to ValidationError("body", ...).
nlohmann::json parse_json_text(std::string_view text);

Family parse_family(std::string_view text, std::string_view path);
MarginKind parse_margin_kind(std::string_view text, std::string_view path);
Direction parse_direction(std::string_view text, std::string_view path);
TrialKind parse_trial_kind(std::string_view text, std::string_view path);
ParameterPoint parse_parameter_point(std::string_view text, std::string_view path);

/// Typed field access with path-qualified errors.
double require_number(const nlohmann::json& obj, std::string_view key, std::string_view path);
std::string require_string(const nlohmann::json& obj, std::string_view key, std::string_view path);
std::string field_path(std::string_view parent, std::string_view key);

}  // namespace trialalloc
