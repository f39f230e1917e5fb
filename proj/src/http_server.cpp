#include "trialalloc/http_server.hpp"

namespace trialalloc::api {

void register_routes(httplib::Server& server, const ApiConfig& config) {
  server.set_default_headers({{"Access-Control-Allow-Origin", config.cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  auto forward = [config](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse out = handle(req.method, req.path, req.body, config);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };

  server.Get("/healthz", forward);
  server.Post(R"(/api/v1/[a-z\-]+)", forward);
  server.Get(R"(/api/v1/[a-z\-]+)", forward);
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

}  // namespace trialalloc::api
