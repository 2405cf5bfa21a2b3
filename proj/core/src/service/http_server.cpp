#include "ahp/service/http_server.hpp"

#include <httplib.h>

#include <iostream>

namespace ahp::service {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, const ServiceError& e) {
  json body = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (!e.details().is_null()) body["details"] = e.details();
  send(res, http_status(e.code()), body);
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(ServiceErrorCode::ParseError, std::string("request body is not JSON: ") + e.what());
  }
}

/// Runs `fn`, turning service errors into JSON error responses.
template <class Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send(res, 500, {{"error", "internal"}, {"message", e.what()}});
    }
  };
}

}  // namespace

int http_status(ServiceErrorCode code) noexcept {
  switch (code) {
    case ServiceErrorCode::UnknownSession:
    case ServiceErrorCode::UnknownContext: return 404;
    case ServiceErrorCode::ValidationFailed: return 422;
    case ServiceErrorCode::ParseError:
    case ServiceErrorCode::UnknownPair:
    case ServiceErrorCode::NonPositiveValue:
    case ServiceErrorCode::InvalidAction: return 400;
  }
  return 500;
}

HttpServer::HttpServer(SessionStore& store, std::filesystem::path ui_dir)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                         {"Access-Control-Allow-Headers", "Content-Type"}});
  s.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  s.Get("/healthz", guarded([this](const httplib::Request&, httplib::Response& res) {
          send(res, 200, {{"status", "ok"}, {"sessions", store_.size()}});
        }));

  s.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const auto created = store_.create(parse_body(req));
           send(res, 201, {{"id", created.id}, {"snapshot", *created.snapshot}});
         }));

  s.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
          send(res, 200, *store_.snapshot(req.matches[1]));
        }));

  s.Put(R"(/sessions/([^/]+)/judgments/([^/]+))",
        guarded([this](const httplib::Request& req, httplib::Response& res) {
          const json body = parse_body(req);
          const auto pair = body.find("pair");
          const auto value = body.find("value");
          if (!body.is_object() || pair == body.end() || value == body.end() || !pair->is_array() ||
              pair->size() != 2 || !(*pair)[0].is_string() || !(*pair)[1].is_string())
            throw ServiceError(ServiceErrorCode::ParseError, R"(body must be {"pair": [row, col], "value": v})");
          send(res, 200,
               *store_.put_judgment(req.matches[1], req.matches[2], (*pair)[0].get<std::string>(),
                                    (*pair)[1].get<std::string>(), parse_value(*value)));
        }));

  s.Post(R"(/sessions/([^/]+)/what-if)", guarded([this](const httplib::Request& req, httplib::Response& res) {
           send(res, 200, store_.what_if(req.matches[1], parse_body(req)));
         }));

  s.Get(R"(/sessions/([^/]+)/export)", guarded([this](const httplib::Request& req, httplib::Response& res) {
          send(res, 200, store_.export_document(req.matches[1]));
        }));

  if (!ui_dir.empty() && !s.set_mount_point("/ui", ui_dir.string()))
    std::cerr << "ui directory " << ui_dir << " not found; /ui disabled\n";
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace ahp::service
