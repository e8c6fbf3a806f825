#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "termcheck/error.hpp"
#include "termcheck/strategy.hpp"

using namespace termcheck;

namespace {

const std::string kData = TERMCHECK_TEST_DATA;
const char* kKboFixed = "kbo -prec \"+ > s > 0\" -w0 1 -weights \"+ = s = 0 = 1\"";
const char* kMatrixFixed = "matrix -inters \"0 = 0, s = x0 + 1, + = [1,1;0,1]x0 + x1 + [1;0]\"";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("tokenize_strategy") {
  CHECK(tokenize_strategy(R"(kbo -prec "+ > s" -w0 1)") == std::vector<std::string>{"kbo", "-prec", "+ > s", "-w0", "1"});
  CHECK(tokenize_strategy("lpo -prec 'f > g'") == std::vector<std::string>{"lpo", "-prec", "f > g"});
  CHECK(tokenize_strategy(R"(a "b \"c\"")") == std::vector<std::string>{"a", "b \"c\""});
  CHECK_THROWS_AS(tokenize_strategy("lpo -prec \"f > g"), ConfigError);
}

TEST_CASE("parse_strategy") {
  Strategy k = parse_strategy(kKboFixed);
  CHECK(k.method == Method::Kbo);
  CHECK(k.prec == parse_prec("+ > s > 0"));
  CHECK(k.weights == parse_weights("+ = s = 0 = 1"));
  CHECK(k.w0 == std::optional<Natural>(1));

  Strategy m = parse_strategy(kMatrixFixed);
  CHECK(m.method == Method::Matrix);
  CHECK(m.inters == parse_inters("0 = 0, s = x0 + 1, + = [1,1;0,1]x0 + x1 + [1;0]", InterpKind::Matrix));

  Strategy d = parse_strategy("matrix -direct -dim 2");
  CHECK(d.method == Method::Matrix);
  CHECK(d.dim == std::optional<std::size_t>(2));
  CHECK(d.direct);
  CHECK_FALSE(d.inters);

  CHECK_THROWS_AS(parse_strategy("rpo"), ConfigError);
  CHECK_THROWS_AS(parse_strategy(""), ConfigError);
  CHECK_THROWS_AS(parse_strategy("lpo -weights \"f = 1\""), ConfigError);
  CHECK_THROWS_AS(parse_strategy("kbo -prec"), ConfigError);
  CHECK_THROWS_AS(parse_strategy("kbo -w0 0"), ConfigError);
  CHECK_THROWS_AS(parse_strategy("kbo -frobnicate"), ConfigError);
  CHECK_THROWS_AS(parse_strategy("lpo -prec \"f >\""), ParseError);
}

TEST_CASE("format_strategy round trip") {
  for (const char* s : {kKboFixed, kMatrixFixed, "matrix -direct -dim 2", "lpo -quasi", "poly -cb 2",
                        "kbo -wb 3 -prec \"NOT(AND(f > g, f > h))\""}) {
    Strategy a = parse_strategy(s);
    CHECK(parse_strategy(format_strategy(a)) == a);
  }
}

TEST_CASE("run_cli exit codes") {
  Run yes = run({kData + "/add.trs", "-s", kKboFixed});
  CHECK(yes.code == 0);
  CHECK(yes.out.rfind("YES\n", 0) == 0);

  Run maybe = run({kData + "/add.trs", "-s", "lpo -prec \"0 > s > +\""});
  CHECK(maybe.code == 1);
  CHECK(maybe.out.rfind("MAYBE\n", 0) == 0);
  CHECK(maybe.out.find("reason: Exhausted") != std::string::npos);

  Run missing = run({kData + "/does-not-exist.trs", "-s", "lpo"});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());

  CHECK(run({kData + "/add.trs", "-s", "rpo"}).code == 2);
  CHECK(run({kData + "/add.trs"}).code == 2);
  CHECK(run({"-", "-s", "lpo"}, "(VAR x)(RULES f(x) ->").code == 2);
}

TEST_CASE("stdin input and recheck") {
  Run a = run({"-", "-s", kMatrixFixed, "--recheck"}, oracle::kAdditionTrs);
  CHECK(a.code == 0);
  CHECK(a.out ==
        "YES\n\nmatrix\ndimension: 2\n[+] = [1,1;0,1]x0 + x1 + [1;0]\n[0] = 0\n[s] = x0 + [1;1]\n");
  Run b = run({"-", "-s", kMatrixFixed}, oracle::kAdditionTrs);
  CHECK(a.out == b.out);
}

TEST_CASE("report format") {
  ProofReport r = run_proof(oracle::kAdditionTrs, kKboFixed);
  CHECK(r.text == "YES\n\nkbo\nprecedence: + > s > 0\nw0: 1\nweights: + = 1, 0 = 1, s = 1\n");
  CHECK(r.body() == "kbo\nprecedence: + > s > 0\nw0: 1\nweights: + = 1, 0 = 1, s = 1\n");
}

TEST_CASE("recheck_strategy fixes every parameter") {
  for (const char* s : {"lpo", "lpo -quasi", "kbo", "poly", "matrix -dim 2", kKboFixed, kMatrixFixed}) {
    ProofReport r = run_proof(oracle::kAdditionTrs, s);
    REQUIRE(r.outcome.is_yes());
    std::string fixed = recheck_strategy(r.text);
    ProofReport again = run_proof(oracle::kAdditionTrs, fixed);
    CHECK(again.outcome.is_yes());
    CHECK(again.text == r.text);
  }
}
