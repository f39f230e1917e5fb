#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace trialalloc::api {

struct ApiConfig {
  /// Upper bound on `reps` accepted by /api/v1/simulate.
  std::uint64_t max_replications = 1'000'000;
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
  std::string host = "0.0.0.0";
  int port = 8080;
};

/// Reads HOST, PORT, CORS_ORIGIN and SIM_REP_CAP; unset variables keep defaults.
ApiConfig config_from_env();

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// Transport-independent dispatch of one request. Stateless: equal inputs give
/// byte-identical responses. Errors are encoded as
///   {"error": {"code": "validation"|"domain"|"internal", "message": ..., "field_path": ...}}
/// with status 400 / 422 / 500 (404 / 405 for unknown routes or methods).
ApiResponse handle(std::string_view method, std::string_view path, std::string_view body,
                   const ApiConfig& config = {});

}  // namespace trialalloc::api
