#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "termcheck/error.hpp"
#include "termcheck/strategy.hpp"

namespace py = pybind11;
using namespace termcheck;

namespace {

py::dict report_dict(const ProofReport& report) {
  py::dict d;
  d["result"] = report.outcome.is_yes() ? "YES" : "MAYBE";
  d["proof"] = report.body();
  d["text"] = report.text;
  if (!report.outcome.is_yes()) d["reason"] = reason_name(report.outcome.reason());
  return d;
}

py::dict trs_dict(const Trs& trs) {
  py::list symbols;
  for (const auto& s : trs.signature().symbols()) symbols.append(py::make_tuple(s.name, s.arity));
  py::list rules;
  for (const auto& r : trs.rules()) rules.append(py::make_tuple(format_term(trs, r.lhs), format_term(trs, r.rhs)));
  py::dict d;
  d["variables"] = trs.variables();
  d["symbols"] = symbols;
  d["rules"] = rules;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Template-restricted termination proofs for term rewrite systems";

  py::register_exception<Error>(m, "TermcheckError", PyExc_ValueError);

  m.def(
      "prove",
      [](const std::string& problem, const std::string& strategy, std::optional<double> timeout) {
        ProofReport report = [&] {
          py::gil_scoped_release release;
          return run_proof(problem, strategy, timeout);
        }();
        return report_dict(report);
      },
      py::arg("problem"), py::arg("strategy"), py::arg("timeout") = py::none(),
      "Run a strategy such as 'kbo -prec \"+ > s > 0\"' on a (VAR ...)(RULES ...) problem.");

  m.def("recheck_strategy", &recheck_strategy, py::arg("report"),
        "Strategy whose templates fix every parameter of a printed YES report.");

  m.def(
      "parse_trs", [](const std::string& text) { return trs_dict(parse_trs(text)); }, py::arg("text"));

  m.def(
      "format_trs", [](const std::string& text) { return format_trs(parse_trs(text)); }, py::arg("text"),
      "Canonical text of a problem.");

  m.def(
      "normalize_strategy", [](const std::string& text) { return format_strategy(parse_strategy(text)); },
      py::arg("strategy"), "Canonical text of a strategy; raises on syntax errors.");

  m.def(
      "normalize_template",
      [](const std::string& kind, const std::string& text) {
        if (kind == "prec") return format_template(parse_prec(text));
        if (kind == "weights") return format_template(parse_weights(text));
        if (kind == "poly") return format_template(parse_inters(text, InterpKind::Poly));
        if (kind == "matrix") return format_template(parse_inters(text, InterpKind::Matrix));
        throw ConfigError("unknown template kind '" + kind + "'");
      },
      py::arg("kind"), py::arg("text"), "kind is one of prec, weights, poly, matrix.");
}
