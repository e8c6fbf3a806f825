#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termcheck/solver.hpp"
#include "termcheck/template.hpp"
#include "termcheck/trs.hpp"

namespace termcheck {

/// A method plus its flags, e.g. `kbo -prec "+ > s > 0" -w0 1`.
struct Strategy {
  Method method = Method::Lpo;
  std::optional<TemplateAst> prec;
  std::optional<TemplateAst> weights;
  std::optional<TemplateAst> inters;
  std::optional<Natural> w0;
  std::optional<std::size_t> dim;
  std::optional<Natural> weight_bound;
  std::optional<Natural> coeff_bound;
  std::optional<Natural> entry_bound;
  bool quasi = false;
  bool direct = false;

  bool operator==(const Strategy&) const = default;
};

/// Shell-style words: whitespace separates, double or single quotes group,
/// backslash escapes inside double quotes.
std::vector<std::string> tokenize_strategy(std::string_view text);

/// Throws ConfigError for unknown methods or flags, flags that do not belong
/// to the method, and missing arguments; ParseError for template syntax.
Strategy parse_strategy(std::string_view text);

/// Canonical strategy text; parse_strategy(format_strategy(s)) == s.
std::string format_strategy(const Strategy& s);

struct PreparedProof {
  Method method;
  SearchConfig config;
  std::optional<CheckedTemplate> tmpl;
};

/// Validates the strategy's templates against the problem's signature.
PreparedProof prepare(const Strategy& s, const Trs& trs);

/// Outcome plus the printed result: `YES`/`MAYBE`, a blank line, the method
/// name, then parameter lines (or `reason: ...`).
struct ProofReport {
  Outcome outcome;
  std::string text;

  /// Everything after the first line and the blank line.
  std::string body() const;
};

ProofReport format_report(const Trs& trs, Method method, const Outcome& outcome);

/// Parses, validates and proves. `timeout` in seconds.
ProofReport run_proof(std::string_view problem, std::string_view strategy, std::optional<double> timeout = {});

/// Reads a printed YES report back into a strategy whose templates fix every
/// parameter of the proof.
std::string recheck_strategy(std::string_view report_text);

/// Command line: `<file|-> -s <strategy> [--timeout sec] [--recheck]`.
/// Exit 0 on YES, 1 on MAYBE, 2 on errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace termcheck
