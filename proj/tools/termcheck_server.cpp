#include <CLI11.hpp>
#include <iostream>

#include "termcheck/error.hpp"
#include "termcheck/server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP front end for termcheck"};
  int port = 8080;
  std::string host = "0.0.0.0";
  std::string web_root;
  double timeout = 10.0;
  app.add_option("--port", port, "port to listen on")->capture_default_str();
  app.add_option("--host", host, "address to bind")->capture_default_str();
  app.add_option("--web-root", web_root, "directory with the web UI build");
  app.add_option("--timeout", timeout, "per-request proof time limit in seconds")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    termcheck::ServerOptions options;
    if (!web_root.empty()) options.web_root = web_root;
    options.timeout = timeout;
    termcheck::ProofServer server(options);
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
      std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
      return 1;
    }
  } catch (const termcheck::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
