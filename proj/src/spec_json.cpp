#include "trialalloc/spec_json.hpp"

#include "trialalloc/errors.hpp"

namespace trialalloc {

using nlohmann::json;

std::string field_path(std::string_view parent, std::string_view key) {
  if (parent.empty()) return std::string(key);
  std::string out(parent);
  out += '.';
  out += key;
  return out;
}

double require_number(const json& obj, std::string_view key, std::string_view path) {
  const std::string p = field_path(path, key);
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(p, "missing required field");
  if (!it->is_number()) throw ValidationError(p, "expected a number");
  return it->get<double>();
}

std::string require_string(const json& obj, std::string_view key, std::string_view path) {
  const std::string p = field_path(path, key);
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(p, "missing required field");
  if (!it->is_string()) throw ValidationError(p, "expected a string");
  return it->get<std::string>();
}

namespace {

void require_object(const json& j, std::string_view path) {
  if (!j.is_object()) {
    throw ValidationError(path.empty() ? std::string("body") : std::string(path), "expected a JSON object");
  }
}

[[noreturn]] void bad_enum(std::string_view text, std::string_view path, std::string_view allowed) {
  throw ValidationError(std::string(path),
                        "unknown value \"" + std::string(text) + "\"; expected one of " + std::string(allowed));
}

}  // namespace

Family parse_family(std::string_view text, std::string_view path) {
  if (text == "normal") return Family::normal;
  if (text == "binomial") return Family::binomial;
  if (text == "poisson") return Family::poisson;
  bad_enum(text, path, "normal, binomial, poisson");
}

MarginKind parse_margin_kind(std::string_view text, std::string_view path) {
  if (text == "additive") return MarginKind::additive;
  if (text == "multiplicative") return MarginKind::multiplicative;
  bad_enum(text, path, "additive, multiplicative");
}

Direction parse_direction(std::string_view text, std::string_view path) {
  if (text == "higher_favorable") return Direction::higher_favorable;
  if (text == "lower_favorable") return Direction::lower_favorable;
  bad_enum(text, path, "higher_favorable, lower_favorable");
}

TrialKind parse_trial_kind(std::string_view text, std::string_view path) {
  if (text == "noninferiority_two_arm") return TrialKind::noninferiority_two_arm;
  if (text == "superiority_multiarm") return TrialKind::superiority_multiarm;
  bad_enum(text, path, "noninferiority_two_arm, superiority_multiarm");
}

ParameterPoint parse_parameter_point(std::string_view text, std::string_view path) {
  if (text == "null_boundary") return ParameterPoint::null_boundary;
  if (text == "alternative") return ParameterPoint::alternative;
  bad_enum(text, path, "null_boundary, alternative");
}

json to_json(const OutcomeFamily& family) {
  json j;
  j["tag"] = to_string(family.tag);
  switch (family.tag) {
    case Family::normal:
      j["mean"] = family.mean;
      j["sd"] = family.sd;
      break;
    case Family::binomial: j["pi"] = family.pi; break;
    case Family::poisson: j["lambda"] = family.lambda; break;
  }
  return j;
}

json to_json(const Margin& margin) {
  return json{{"kind", to_string(margin.kind)}, {"value", margin.value}};
}

json to_json(const ErrorRates& rates) {
  return json{{"alpha", rates.alpha}, {"power", rates.power}};
}

json to_json(const DesignSpec& spec) {
  json j;
  j["trial_kind"] = to_string(spec.trial_kind);
  j["control"] = to_json(spec.control);
  if (spec.trial_kind == TrialKind::noninferiority_two_arm && spec.treatment.size() == 1) {
    j["treatment"] = to_json(spec.treatment.front());
  } else {
    json arms = json::array();
    for (const auto& arm : spec.treatment) arms.push_back(to_json(arm));
    j["treatment"] = std::move(arms);
  }
  if (spec.margin) j["margin"] = to_json(*spec.margin);
  j["rates"] = to_json(spec.rates);
  j["direction"] = to_string(spec.direction);
  if (spec.variance_eval_point) j["variance_eval_point"] = to_string(*spec.variance_eval_point);
  return j;
}

OutcomeFamily family_from_json(const json& j, std::string_view path) {
  require_object(j, path);
  const Family tag = parse_family(require_string(j, "tag", path), field_path(path, "tag"));
  switch (tag) {
    case Family::normal:
      return OutcomeFamily::normal(require_number(j, "mean", path), require_number(j, "sd", path));
    case Family::binomial:
      return OutcomeFamily::binomial(require_number(j, "pi", path));
    case Family::poisson:
      return OutcomeFamily::poisson(require_number(j, "lambda", path));
  }
  return {};
}

Margin margin_from_json(const json& j, std::string_view path) {
  require_object(j, path);
  Margin m;
  m.kind = parse_margin_kind(require_string(j, "kind", path), field_path(path, "kind"));
  m.value = require_number(j, "value", path);
  return m;
}

ErrorRates rates_from_json(const json& j, std::string_view path) {
  require_object(j, path);
  return ErrorRates{require_number(j, "alpha", path), require_number(j, "power", path)};
}

DesignSpec design_spec_from_json(const json& j) {
  require_object(j, "");
  DesignSpec spec;
  spec.trial_kind = parse_trial_kind(require_string(j, "trial_kind", ""), "trial_kind");

  const auto control = j.find("control");
  if (control == j.end()) throw ValidationError("control", "missing required field");
  spec.control = family_from_json(*control, "control");

  const auto treatment = j.find("treatment");
  if (treatment == j.end()) throw ValidationError("treatment", "missing required field");
  if (treatment->is_array()) {
    for (std::size_t i = 0; i < treatment->size(); ++i) {
      spec.treatment.push_back(family_from_json((*treatment)[i], "treatment[" + std::to_string(i) + "]"));
    }
  } else {
    spec.treatment.push_back(family_from_json(*treatment, "treatment"));
  }

  if (const auto margin = j.find("margin"); margin != j.end() && !margin->is_null()) {
    spec.margin = margin_from_json(*margin);
  }

  const auto rates = j.find("rates");
  if (rates == j.end()) throw ValidationError("rates", "missing required field");
  spec.rates = rates_from_json(*rates);

  if (j.contains("direction")) {
    spec.direction = parse_direction(require_string(j, "direction", ""), "direction");
  }
  if (const auto point = j.find("variance_eval_point"); point != j.end() && !point->is_null()) {
    spec.variance_eval_point =
        parse_parameter_point(require_string(j, "variance_eval_point", ""), "variance_eval_point");
  }
  return spec;
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError("body", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace trialalloc
