#include "termcheck/strategy.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "termcheck/error.hpp"

namespace termcheck {

std::vector<std::string> tokenize_strategy(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) words.push_back(std::move(current));
      current.clear();
      in_word = false;
      continue;
    }
    in_word = true;
    if (c == '"' || c == '\'') {
      const char quote = c;
      std::size_t j = i + 1;
      for (; j < text.size() && text[j] != quote; ++j) {
        if (quote == '"' && text[j] == '\\' && j + 1 < text.size() && (text[j + 1] == '"' || text[j + 1] == '\\')) {
          ++j;
        }
        current.push_back(text[j]);
      }
      if (j >= text.size()) throw ConfigError("unterminated quote in strategy");
      i = j;
    } else {
      current.push_back(c);
    }
  }
  if (in_word) words.push_back(std::move(current));
  return words;
}

namespace {

Natural parse_natural(const std::string& flag, const std::string& value) {
  Natural v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("flag " + flag + " expects a natural number, got '" + value + "'");
  }
  return v;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

bool allowed(const std::string& flag, Method m) {
  const bool path = m == Method::Lpo || m == Method::Kbo;
  const bool interp = m == Method::Poly || m == Method::Matrix;
  if (flag == "-prec" || flag == "-quasi") return path;
  if (flag == "-w0" || flag == "-weights" || flag == "-wb") return m == Method::Kbo;
  if (flag == "-inters" || flag == "-direct") return interp;
  if (flag == "-cb") return m == Method::Poly;
  if (flag == "-dim" || flag == "-eb") return m == Method::Matrix;
  throw ConfigError("unknown flag '" + flag + "'");
}

}  // namespace

Strategy parse_strategy(std::string_view text) {
  auto words = tokenize_strategy(text);
  if (words.empty()) throw ConfigError("empty strategy");
  auto method = method_from_name(words[0]);
  if (!method) throw ConfigError("unknown method '" + words[0] + "' (expected lpo, kbo, poly or matrix)");

  Strategy s;
  s.method = *method;
  std::vector<std::string> seen;
  for (std::size_t i = 1; i < words.size(); ++i) {
    const std::string& flag = words[i];
    if (!allowed(flag, s.method)) throw ConfigError("flag " + flag + " does not apply to " + words[0]);
    if (std::find(seen.begin(), seen.end(), flag) != seen.end()) throw ConfigError("flag " + flag + " given twice");
    seen.push_back(flag);

    if (flag == "-quasi") {
      s.quasi = true;
      continue;
    }
    if (flag == "-direct") {
      s.direct = true;
      continue;
    }
    if (i + 1 >= words.size()) throw ConfigError("flag " + flag + " needs an argument");
    const std::string& arg = words[++i];
    if (flag == "-prec") {
      s.prec = parse_prec(arg);
    } else if (flag == "-weights") {
      s.weights = parse_weights(arg);
    } else if (flag == "-inters") {
      s.inters = parse_inters(arg, s.method == Method::Matrix ? InterpKind::Matrix : InterpKind::Poly);
    } else if (flag == "-w0") {
      s.w0 = parse_natural(flag, arg);
      if (*s.w0 == 0) throw ConfigError("-w0 must be at least 1");
    } else if (flag == "-dim") {
      s.dim = parse_natural(flag, arg);
      if (*s.dim == 0) throw ConfigError("-dim must be at least 1");
    } else if (flag == "-wb") {
      s.weight_bound = parse_natural(flag, arg);
    } else if (flag == "-cb") {
      s.coeff_bound = parse_natural(flag, arg);
    } else if (flag == "-eb") {
      s.entry_bound = parse_natural(flag, arg);
    }
  }
  return s;
}

std::string format_strategy(const Strategy& s) {
  std::string out = method_name(s.method);
  if (s.prec) out += " -prec " + quote(format_template(*s.prec));
  if (s.w0) out += " -w0 " + std::to_string(*s.w0);
  if (s.weights) out += " -weights " + quote(format_template(*s.weights));
  if (s.inters) out += " -inters " + quote(format_template(*s.inters));
  if (s.direct) out += " -direct";
  if (s.dim) out += " -dim " + std::to_string(*s.dim);
  if (s.weight_bound) out += " -wb " + std::to_string(*s.weight_bound);
  if (s.coeff_bound) out += " -cb " + std::to_string(*s.coeff_bound);
  if (s.entry_bound) out += " -eb " + std::to_string(*s.entry_bound);
  if (s.quasi) out += " -quasi";
  return out;
}

PreparedProof prepare(const Strategy& s, const Trs& trs) {
  PreparedProof p{s.method, {}, std::nullopt};
  if (s.weight_bound) p.config.weight_bound = *s.weight_bound;
  if (s.coeff_bound) p.config.coeff_bound = *s.coeff_bound;
  if (s.entry_bound) p.config.entry_bound = *s.entry_bound;
  p.config.dim = s.dim;
  if (s.quasi) p.config.mode = PrecedenceMode::Quasi;

  std::vector<TemplateAst> parts;
  for (const auto* t : {&s.prec, &s.weights}) {
    if (*t) parts.push_back(**t);
  }
  if (s.w0) parts.push_back(TemplateAst::leaf(W0Atom{*s.w0}));
  if (s.inters) parts.push_back(*s.inters);
  if (parts.empty()) return p;

  TemplateAst whole = parts.size() == 1 ? std::move(parts.front()) : TemplateAst::conjunction(std::move(parts));
  p.tmpl = validate(whole, trs.signature(), s.method == Method::Matrix ? s.dim : std::nullopt);
  return p;
}

std::string ProofReport::body() const {
  auto pos = text.find("\n\n");
  return pos == std::string::npos ? std::string() : text.substr(pos + 2);
}

ProofReport format_report(const Trs& trs, Method method, const Outcome& outcome) {
  std::string text = outcome.is_yes() ? "YES" : "MAYBE";
  text += "\n\n" + method_name(method) + "\n";
  if (outcome.is_yes()) {
    text += format_certificate(trs, outcome.certificate());
  } else {
    text += "reason: " + reason_name(outcome.reason()) + "\n";
  }
  return ProofReport{outcome, std::move(text)};
}

ProofReport run_proof(std::string_view problem, std::string_view strategy, std::optional<double> timeout) {
  Trs trs = parse_trs(problem);
  Strategy s = parse_strategy(strategy);
  PreparedProof p = prepare(s, trs);
  if (timeout) p.config.time_limit = std::chrono::duration<double>(*timeout);
  Outcome outcome = prove(trs, p.method, p.config, p.tmpl ? &*p.tmpl : nullptr);
  return format_report(trs, p.method, outcome);
}

namespace {

// `+ > s ~ 0` in strict mode: every pair across adjacent groups is ordered,
// every pair inside a group is unordered.
std::string precedence_template(const std::vector<std::string>& words, bool quasi) {
  std::vector<std::vector<std::string>> groups{{}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i % 2 == 0) {
      groups.back().push_back(words[i]);
    } else if (words[i] == ">") {
      groups.emplace_back();
    } else if (words[i] != "~") {
      throw ConfigError("malformed precedence line");
    }
  }
  if (words.size() % 2 == 0) throw ConfigError("malformed precedence line");

  std::vector<std::string> atoms;
  if (quasi) {
    std::string chain;
    for (std::size_t i = 0; i < words.size(); ++i) chain += (i % 2 == 1 ? (words[i] == "~" ? " = " : " > ") : words[i]);
    if (words.size() > 1) atoms.push_back(chain);
  } else {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t a = 0; a < groups[g].size(); ++a) {
        if (g + 1 < groups.size()) {
          for (const auto& lower : groups[g + 1]) atoms.push_back(groups[g][a] + " > " + lower);
        }
        for (std::size_t b = 0; b < groups[g].size(); ++b) {
          if (a != b) atoms.push_back("NOT(" + groups[g][a] + " > " + groups[g][b] + ")");
        }
      }
    }
  }
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i > 0 ? ", " : "") + atoms[i];
  return out;
}

std::string after(const std::string& line, std::string_view label) {
  std::string rest = line.substr(label.size());
  auto start = rest.find_first_not_of(' ');
  return start == std::string::npos ? std::string() : rest.substr(start);
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

std::string recheck_strategy(std::string_view report_text) {
  std::istringstream in{std::string(report_text)};
  std::string line;
  std::getline(in, line);
  if (line != "YES") throw ConfigError("only YES reports can be rechecked");
  std::getline(in, line);
  std::getline(in, line);
  auto method = method_from_name(line);
  if (!method) throw ConfigError("report has no method line");

  std::string out = line;
  std::vector<std::string> inters;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (starts_with(line, "precedence:") || starts_with(line, "quasi-precedence:")) {
      bool quasi = starts_with(line, "quasi");
      auto chain = tokenize_strategy(after(line, quasi ? "quasi-precedence:" : "precedence:"));
      std::string tmpl = precedence_template(chain, quasi);
      if (!tmpl.empty()) out += " -prec " + quote(tmpl);
      if (quasi) out += " -quasi";
    } else if (starts_with(line, "w0:")) {
      out += " -w0 " + after(line, "w0:");
    } else if (starts_with(line, "weights:")) {
      std::string w = after(line, "weights:");
      if (!w.empty()) out += " -weights " + quote(w);
    } else if (starts_with(line, "dimension:")) {
      out += " -dim " + after(line, "dimension:");
    } else if (starts_with(line, "[")) {
      auto close = line.find("] = ");
      if (close == std::string::npos) throw ConfigError("malformed interpretation line: " + line);
      inters.push_back(line.substr(1, close - 1) + " = " + line.substr(close + 4));
    } else {
      throw ConfigError("unexpected report line: " + line);
    }
  }
  if (!inters.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < inters.size(); ++i) joined += (i > 0 ? ", " : "") + inters[i];
    out += " -inters " + quote(joined);
  }
  return out;
}

}  // namespace termcheck
