#include <iostream>

#include "trialalloc/http_server.hpp"

int main() {
  const trialalloc::api::ApiConfig config = trialalloc::api::config_from_env();
  httplib::Server server;
  trialalloc::api::register_routes(server, config);
  std::cerr << "listening on " << config.host << ':' << config.port << '\n';
  if (!server.listen(config.host, config.port)) {
    std::cerr << "failed to bind " << config.host << ':' << config.port << '\n';
    return 1;
  }
  return 0;
}
