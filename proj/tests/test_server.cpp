#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <future>
#include <unistd.h>
#include <json.hpp>
#include <thread>

#include "oracles.hpp"
#include "termcheck/server.hpp"

using namespace termcheck;
using nlohmann::json;

namespace {

const char* kKboFixed = "kbo -prec \"+ > s > 0\" -w0 1 -weights \"+ = s = 0 = 1\"";

json request(const std::string& problem, const std::string& strategy) {
  return json{{"problem", problem}, {"strategy", strategy}};
}

// Runs a server on a free port for the lifetime of the object.
class LiveServer {
 public:
  explicit LiveServer(ServerOptions options) : server_(std::move(options)) {
    port_ = server_.bind_to_any_port("127.0.0.1");
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LiveServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  ProofServer server_;
  int port_ = -1;
  std::thread thread_;
};

}  // namespace

TEST_CASE("handle_prove") {
  HttpReply yes = handle_prove(request(oracle::kAdditionTrs, kKboFixed).dump());
  CHECK(yes.status == 200);
  json y = json::parse(yes.body);
  CHECK(y["result"] == "YES");
  CHECK(y["proof"] == "kbo\nprecedence: + > s > 0\nw0: 1\nweights: + = 1, 0 = 1, s = 1\n");
  CHECK_FALSE(y.contains("reason"));

  HttpReply maybe = handle_prove(request(oracle::kAdditionTrs, "lpo -prec \"0 > s > +\"").dump());
  CHECK(maybe.status == 200);
  json m = json::parse(maybe.body);
  CHECK(m["result"] == "MAYBE");
  CHECK(m["reason"] == "Exhausted");

  CHECK(handle_prove(request("", "kbo").dump()).status == 400);
  CHECK(handle_prove("not json").status == 400);
  CHECK(handle_prove(json{{"problem", oracle::kAdditionTrs}}.dump()).status == 400);
  CHECK(handle_prove(json{{"problem", 3}, {"strategy", "lpo"}}.dump()).status == 400);
  CHECK(handle_prove(request(oracle::kAdditionTrs, "rpo").dump()).status == 400);
  CHECK(handle_prove(request("(VAR x)(RULES f(x) ->", "lpo").dump()).status == 400);
  HttpReply err = handle_prove(request(oracle::kAdditionTrs, "lpo -prec \"q > s\"").dump());
  CHECK(err.status == 400);
  CHECK(json::parse(err.body).contains("error"));

  std::string big(kMaxRequestBytes + 1, ' ');
  CHECK(handle_prove(big).status == 413);
}

TEST_CASE("handle_prove honours the timeout cap") {
  json req = request("(VAR x y)(RULES a(0,y) -> s(y)  a(s(x),0) -> a(x,s(0))  a(s(x),s(y)) -> a(x,a(s(x),y)))",
                     "matrix -dim 3 -eb 5");
  req["timeout"] = 60;
  HttpReply r = handle_prove(req.dump(), 0.1);
  json j = json::parse(r.body);
  CHECK(j["result"] == "MAYBE");
  CHECK(j["reason"] == "Timeout");
}

TEST_CASE("live server with the placeholder page") {
  LiveServer live(ServerOptions{});
  auto cli = live.client();

  auto root = cli.Get("/");
  REQUIRE(root);
  CHECK(root->status == 200);
  CHECK(root->get_header_value("Content-Type").find("text/html") == 0);
  auto js = cli.Get("/app.js");
  REQUIRE(js);
  CHECK(js->status == 200);
  auto nope = cli.Get("/nope");
  REQUIRE(nope);
  CHECK(nope->status == 404);

  std::string body = request(oracle::kAdditionTrs, kKboFixed).dump();
  auto first = cli.Post("/prove", body, "application/json");
  REQUIRE(first);
  CHECK(first->status == 200);
  CHECK(json::parse(first->body)["result"] == "YES");

  // identical concurrent requests give identical bodies
  std::vector<std::future<std::string>> replies;
  for (int i = 0; i < 4; ++i) {
    replies.push_back(std::async(std::launch::async, [&live, body] {
      auto c = live.client();
      auto r = c.Post("/prove", body, "application/json");
      return r ? r->body : std::string();
    }));
  }
  for (auto& f : replies) CHECK(f.get() == first->body);

  auto bad = cli.Post("/prove", "{}", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  auto huge = cli.Post("/prove", std::string(kMaxRequestBytes + 1, ' '), "application/json");
  REQUIRE(huge);
  CHECK(huge->status == 413);
}

TEST_CASE("live server with a web root") {
  auto dir = std::filesystem::temp_directory_path() / ("termcheck-web-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "index.html") << "<!doctype html><title>ui</title>";
  std::ofstream(dir / "app.js") << "console.log('ui');";
  {
    LiveServer live(ServerOptions{dir, 10.0});
    auto cli = live.client();
    auto root = cli.Get("/");
    REQUIRE(root);
    CHECK(root->status == 200);
    CHECK(root->body == "<!doctype html><title>ui</title>");
    auto js = cli.Get("/app.js");
    REQUIRE(js);
    CHECK(js->status == 200);
    CHECK(cli.Get("/nope")->status == 404);
  }
  std::filesystem::remove_all(dir);
}
