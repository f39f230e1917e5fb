#pragma once

#include <httplib.h>

#include "trialalloc/api.hpp"

namespace trialalloc::api {

/// Mounts /healthz and /api/v1/* on `server`, forwarding to handle(), with CORS
/// headers from `config`.
void register_routes(httplib::Server& server, const ApiConfig& config);

}  // namespace trialalloc::api
