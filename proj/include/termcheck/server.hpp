#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace termcheck {

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

constexpr std::size_t kMaxRequestBytes = 64 * 1024;

/// POST /prove. Request `{"problem": ..., "strategy": ..., "timeout"?: seconds}`;
/// reply `{"result": "YES"|"MAYBE", "proof": ..., "reason"?: ...}` or
/// `{"error": ...}` with status 400 (bad input) or 413 (oversized).
/// The request timeout is capped at `max_timeout` seconds.
HttpReply handle_prove(std::string_view request_body, double max_timeout = 10.0);

struct ServerOptions {
  /// Directory with the web UI build; a placeholder page is served without it.
  std::optional<std::filesystem::path> web_root;
  double timeout = 10.0;
};

/// Stateless HTTP front end: POST /prove, GET / and static assets.
class ProofServer {
 public:
  explicit ProofServer(ServerOptions options);
  ~ProofServer();
  ProofServer(const ProofServer&) = delete;
  ProofServer& operator=(const ProofServer&) = delete;

  /// Binds and serves until stop(); returns false if binding fails.
  bool listen(const std::string& host, int port);
  /// Binds to a free port and returns it (negative on failure); serve with listen_after_bind().
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace termcheck
