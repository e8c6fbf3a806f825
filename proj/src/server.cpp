#include "termcheck/server.hpp"

#include <httplib.h>

#include <algorithm>
#include <json.hpp>

#include "termcheck/error.hpp"
#include "termcheck/strategy.hpp"

namespace termcheck {

namespace {

using nlohmann::json;

HttpReply error_reply(int status, const std::string& message) {
  return HttpReply{status, json{{"error", message}}.dump(), "application/json"};
}

constexpr const char* kPlaceholderIndex = R"(<!DOCTYPE html>
<html>
<head><meta charset="utf-8"><title>termcheck</title><script src="app.js"></script></head>
<body>
<h1>termcheck</h1>
<p>The web front end is not installed. Start the server with <code>--web-root</code> pointing at its build
output, or POST JSON <code>{"problem": "...", "strategy": "..."}</code> to <code>/prove</code>.</p>
</body>
</html>
)";

constexpr const char* kPlaceholderScript = "// web front end not installed\n";

}  // namespace

HttpReply handle_prove(std::string_view request_body, double max_timeout) {
  if (request_body.size() > kMaxRequestBytes) return error_reply(413, "request larger than 64 KiB");

  json request = json::parse(request_body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) return error_reply(400, "request body is not a JSON object");
  if (!request.contains("problem") || !request["problem"].is_string()) {
    return error_reply(400, "missing string field 'problem'");
  }
  if (!request.contains("strategy") || !request["strategy"].is_string()) {
    return error_reply(400, "missing string field 'strategy'");
  }
  double timeout = max_timeout;
  if (request.contains("timeout")) {
    if (!request["timeout"].is_number() || request["timeout"].get<double>() <= 0) {
      return error_reply(400, "'timeout' must be a positive number of seconds");
    }
    timeout = std::min(timeout, request["timeout"].get<double>());
  }

  const auto& problem = request["problem"].get_ref<const std::string&>();
  const auto& strategy = request["strategy"].get_ref<const std::string&>();
  if (problem.find_first_not_of(" \t\r\n") == std::string::npos) return error_reply(400, "empty problem");

  try {
    ProofReport report = run_proof(problem, strategy, timeout);
    json reply{{"result", report.outcome.is_yes() ? "YES" : "MAYBE"}, {"proof", report.body()}};
    if (!report.outcome.is_yes()) reply["reason"] = reason_name(report.outcome.reason());
    return HttpReply{200, reply.dump(), "application/json"};
  } catch (const Error& e) {
    return error_reply(400, e.what());
  } catch (const std::exception& e) {
    return error_reply(500, e.what());
  }
}

struct ProofServer::Impl {
  httplib::Server http;
};

ProofServer::ProofServer(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  auto& http = impl_->http;
  http.set_payload_max_length(kMaxRequestBytes);
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Headers", "Content-Type"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});

  const double timeout = options.timeout;
  http.Post("/prove", [timeout](const httplib::Request& req, httplib::Response& res) {
    HttpReply reply = handle_prove(req.body, timeout);
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  });
  http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (options.web_root) {
    if (!http.set_mount_point("/", options.web_root->string())) {
      throw ConfigError("web root '" + options.web_root->string() + "' is not a directory");
    }
  } else {
    http.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderIndex, "text/html; charset=utf-8");
    });
    http.Get("/index.html", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderIndex, "text/html; charset=utf-8");
    });
    http.Get("/app.js", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderScript, "application/javascript");
    });
  }
}

ProofServer::~ProofServer() { stop(); }

bool ProofServer::listen(const std::string& host, int port) { return impl_->http.listen(host, port); }

int ProofServer::bind_to_any_port(const std::string& host) { return impl_->http.bind_to_any_port(host); }

bool ProofServer::listen_after_bind() { return impl_->http.listen_after_bind(); }

void ProofServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

void ProofServer::stop() { impl_->http.stop(); }

}  // namespace termcheck
