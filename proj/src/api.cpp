#include "trialalloc/api.hpp"

#include <cstdlib>
#include <optional>

#include <json.hpp>

#include "trialalloc/allocation.hpp"
#include "trialalloc/errors.hpp"
#include "trialalloc/report.hpp"
#include "trialalloc/sample_size.hpp"
#include "trialalloc/simulate.hpp"
#include "trialalloc/spec_json.hpp"
#include "trialalloc/survival.hpp"

namespace trialalloc::api {

using nlohmann::json;

namespace {

ApiResponse error_response(int status, std::string_view code, std::string_view message,
                           std::optional<std::string> field_path = std::nullopt) {
  json err{{"code", code}, {"message", message}};
  if (field_path) err["field_path"] = *field_path;
  return {status, json{{"error", std::move(err)}}.dump()};
}

ApiResponse ok(const json& j) { return {200, j.dump()}; }

std::optional<double> optional_number(const json& body, std::string_view key) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw ValidationError(std::string(key), "expected a number");
  return it->get<double>();
}

std::int64_t require_count(const json& body, std::string_view key) {
  const auto it = body.find(key);
  if (it == body.end()) throw ValidationError(std::string(key), "missing required field");
  if (!it->is_number_integer()) throw ValidationError(std::string(key), "expected an integer");
  return it->get<std::int64_t>();
}

int optional_int(const json& body, std::string_view key, int fallback) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_number_integer()) throw ValidationError(std::string(key), "expected an integer");
  return it->get<int>();
}

std::uint64_t require_unsigned(const json& body, std::string_view key) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) throw ValidationError(std::string(key), "missing required field");
  if (!it->is_number_unsigned()) throw ValidationError(std::string(key), "expected a non-negative integer");
  return it->get<std::uint64_t>();
}

ApiResponse allocation(const json& body) { return ok(to_json(allocate(design_spec_from_json(body)))); }

ApiResponse sample_size(const json& body) {
  const DesignSpec spec = design_spec_from_json(body);
  return ok(to_json(sample_size_ni(spec, optional_number(body, "h"))));
}

ApiResponse events(const json& body) {
  if (!body.is_object()) throw ValidationError("body", "expected a JSON object");
  const double delta0 = require_number(body, "delta0", "");
  const ErrorRates rates{require_number(body, "alpha", ""), require_number(body, "power", "")};
  validate_rates(rates, "");
  EventMethod method = EventMethod::jung;
  if (body.contains("method")) {
    const std::string m = require_string(body, "method", "");
    if (m == "jung") {
      method = EventMethod::jung;
    } else if (m == "chow") {
      method = EventMethod::chow;
    } else {
      throw ValidationError("method", "unknown value \"" + m + "\"; expected one of jung, chow");
    }
  }
  return ok(to_json(design_events(delta0, rates, method, optional_number(body, "p"))));
}

ApiResponse curve(const json& body) {
  const DesignSpec spec = design_spec_from_json(body);
  const double r_min = optional_number(body, "r_min").value_or(0.2);
  const double r_max = optional_number(body, "r_max").value_or(4.0);
  const int points = optional_int(body, "points", 200);
  return ok(to_json(efficiency_curve(spec, r_min, r_max, points)));
}

ApiResponse simulate(const json& body, const ApiConfig& config) {
  const DesignSpec spec = design_spec_from_json(body);
  const std::uint64_t seed = require_unsigned(body, "seed");
  const std::int64_t n_control = require_count(body, "n_control");
  const std::int64_t n_treatment = require_count(body, "n_treatment");
  const std::uint64_t reps = require_unsigned(body, "reps");
  if (reps > config.max_replications) {
    throw ValidationError("reps", "replication count exceeds the server cap of " +
                                      std::to_string(config.max_replications));
  }
  ParameterPoint truth = ParameterPoint::alternative;
  if (body.contains("truth")) truth = parse_parameter_point(require_string(body, "truth", ""), "truth");
  return ok(to_json(simulate_rejection_rate(spec, n_control, n_treatment, truth, reps, seed)));
}

}  // namespace

ApiConfig config_from_env() {
  ApiConfig config;
  if (const char* v = std::getenv("HOST"); v && *v) config.host = v;
  if (const char* v = std::getenv("PORT"); v && *v) config.port = std::atoi(v);
  if (const char* v = std::getenv("CORS_ORIGIN"); v && *v) config.cors_origin = v;
  if (const char* v = std::getenv("SIM_REP_CAP"); v && *v) config.max_replications = std::strtoull(v, nullptr, 10);
  return config;
}

ApiResponse handle(std::string_view method, std::string_view path, std::string_view body, const ApiConfig& config) {
  try {
    if (path == "/healthz") {
      if (method != "GET") return error_response(405, "validation", "method not allowed", "method");
      return ok(json{{"status", "ok"}});
    }

    using Handler = ApiResponse (*)(const json&, const ApiConfig&);
    Handler handler = nullptr;
    if (path == "/api/v1/allocation") {
      handler = [](const json& b, const ApiConfig&) { return allocation(b); };
    } else if (path == "/api/v1/sample-size") {
      handler = [](const json& b, const ApiConfig&) { return sample_size(b); };
    } else if (path == "/api/v1/events") {
      handler = [](const json& b, const ApiConfig&) { return events(b); };
    } else if (path == "/api/v1/curve") {
      handler = [](const json& b, const ApiConfig&) { return curve(b); };
    } else if (path == "/api/v1/simulate") {
      handler = [](const json& b, const ApiConfig& c) { return simulate(b, c); };
    }
    if (handler == nullptr) return error_response(404, "validation", "unknown endpoint", "path");
    if (method != "POST") return error_response(405, "validation", "method not allowed", "method");

    return handler(parse_json_text(body), config);
  } catch (const ValidationError& e) {
    return error_response(400, "validation", e.what(), e.field_path().empty() ? "body" : e.field_path());
  } catch (const DomainError& e) {
    return error_response(422, "domain", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

}  // namespace trialalloc::api
