#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "ahp/service/session.hpp"

namespace httplib {
class Server;
}

namespace ahp::service {

/// HTTP front end of a SessionStore. Routes:
///   GET  /healthz
///   POST /sessions                          model document -> {id, snapshot}
///   GET  /sessions/{id}                     snapshot
///   PUT  /sessions/{id}/judgments/{context} {"pair": [row, col], "value": v} -> snapshot
///   POST /sessions/{id}/what-if             action -> hypothetical snapshot
///   GET  /sessions/{id}/export              model document
/// and, when `ui_dir` is set, static files under /ui.
class HttpServer {
 public:
  explicit HttpServer(SessionStore& store, std::filesystem::path ui_dir = {});
  ~HttpServer();

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  SessionStore& store_;
  std::unique_ptr<httplib::Server> server_;
};

/// HTTP status for a service error.
int http_status(ServiceErrorCode code) noexcept;

}  // namespace ahp::service
