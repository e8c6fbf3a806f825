#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "termcheck/error.hpp"
#include "termcheck/strategy.hpp"

namespace termcheck {

namespace {

std::optional<std::string> read_problem(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) return std::nullopt;
  buf << file.rdbuf();
  return buf.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Termination proofs by LPO, KBO, polynomial and matrix interpretations, restricted by templates",
               "termcheck"};
  std::string path;
  std::string strategy;
  std::optional<double> timeout;
  bool recheck = false;
  app.add_option("problem", path, "TRS file in (VAR ...)(RULES ...) format, or - for stdin")->required();
  app.add_option("-s,--strategy", strategy, "method and flags, e.g. 'kbo -prec \"f > g\"'")->required();
  app.add_option("--timeout", timeout, "time limit in seconds");
  app.add_flag("--recheck", recheck, "feed the printed proof back as a fully fixing template");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  auto problem = read_problem(path, in);
  if (!problem) {
    err << "error: cannot read '" << path << "'\n";
    return 2;
  }

  try {
    ProofReport report = run_proof(*problem, strategy, timeout);
    if (recheck && report.outcome.is_yes()) {
      std::string fixed = recheck_strategy(report.text);
      ProofReport again = run_proof(*problem, fixed, timeout);
      if (again.text != report.text) {
        err << "error: recheck failed for strategy: " << fixed << "\n" << again.text;
        return 2;
      }
    }
    out << report.text;
    return report.outcome.is_yes() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace termcheck
