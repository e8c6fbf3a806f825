#include "termcheck/trs.hpp"

#include <algorithm>
#include <cctype>

#include "termcheck/error.hpp"

namespace termcheck {

SymbolId Signature::intern(const std::string& name, std::size_t arity) {
  if (auto it = index_.find(name); it != index_.end()) {
    const Symbol& known = symbols_[it->second];
    if (known.arity != arity) {
      throw ValidationError("arity clash for symbol '" + name + "': used with " + std::to_string(known.arity) +
                            " and " + std::to_string(arity) + " arguments");
    }
    return it->second;
  }
  auto id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back({name, arity});
  index_.emplace(name, id);
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

VarId Trs::declare_variable(const std::string& name) {
  if (auto existing = find_variable(name)) return *existing;
  if (signature_.find(name)) throw ValidationError("'" + name + "' is already a function symbol");
  variables_.push_back(name);
  return static_cast<VarId>(variables_.size() - 1);
}

std::optional<VarId> Trs::find_variable(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<VarId>(it - variables_.begin());
}

void Trs::add_rule(Term lhs, Term rhs) {
  if (lhs.is_var()) throw ValidationError("left-hand side of a rule is a variable");
  std::vector<std::size_t> lhs_vars;
  std::vector<std::size_t> rhs_vars;
  count_vars(lhs, lhs_vars);
  count_vars(rhs, rhs_vars);
  for (std::size_t x = 0; x < rhs_vars.size(); ++x) {
    if (rhs_vars[x] > 0 && (x >= lhs_vars.size() || lhs_vars[x] == 0)) {
      throw ValidationError("variable '" + variables_.at(x) + "' occurs in the right-hand side but not in the left");
    }
  }
  rules_.push_back({std::move(lhs), std::move(rhs)});
}

namespace {

class TrsParser {
 public:
  explicit TrsParser(std::string_view text) : text_(text) {}

  Trs parse() {
    skip_ws();
    while (!at_end()) {
      expect('(');
      auto [keyword, kline, kcol] = name_token();
      if (keyword == "VAR") {
        parse_vars();
      } else if (keyword == "RULES") {
        parse_rules();
      } else if (keyword == "COMMENT") {
        skip_comment();
      } else {
        throw ParseError("unsupported section '" + keyword + "'", kline, kcol);
      }
      skip_ws();
    }
    return std::move(trs_);
  }

 private:
  struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
  };

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_arrow() const { return text_.substr(pos_, 2) == "->"; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  static bool name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',';
  }

  Token name_token() {
    skip_ws();
    Token tok{"", line_, column_};
    while (!at_end() && name_char(peek()) && !at_arrow()) {
      tok.text.push_back(peek());
      advance();
    }
    if (tok.text.empty()) fail("expected a name");
    return tok;
  }

  void parse_vars() {
    for (skip_ws(); peek() != ')'; skip_ws()) {
      if (at_end()) fail("unterminated VAR section");
      auto tok = name_token();
      try {
        trs_.declare_variable(tok.text);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), tok.line, tok.column);
      }
    }
    advance();
  }

  void parse_rules() {
    for (skip_ws(); peek() != ')'; skip_ws()) {
      if (at_end()) fail("unterminated RULES section");
      std::size_t line = line_;
      std::size_t column = column_;
      Term lhs = parse_term();
      skip_ws();
      if (!at_arrow()) fail("expected '->'");
      advance();
      advance();
      Term rhs = parse_term();
      try {
        trs_.add_rule(std::move(lhs), std::move(rhs));
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), line, column);
      }
    }
    advance();
  }

  struct RawTerm {
    Token head;
    bool has_parens = false;
    std::vector<RawTerm> args;
  };

  Term parse_term() { return resolve(parse_raw()); }

  RawTerm parse_raw() {
    RawTerm raw{name_token(), false, {}};
    skip_ws();
    if (peek() != '(') return raw;
    raw.has_parens = true;
    advance();
    skip_ws();
    if (peek() != ')') {
      raw.args.push_back(parse_raw());
      for (skip_ws(); peek() == ','; skip_ws()) {
        advance();
        raw.args.push_back(parse_raw());
      }
    }
    expect(')');
    return raw;
  }

  // Symbols are interned in preorder so the signature follows first occurrence.
  Term resolve(const RawTerm& raw) {
    const Token& tok = raw.head;
    if (auto x = trs_.find_variable(tok.text)) {
      if (raw.has_parens) throw ParseError("variable '" + tok.text + "' applied to arguments", tok.line, tok.column);
      return Term::var(*x);
    }
    SymbolId f;
    try {
      f = trs_.intern_symbol(tok.text, raw.args.size());
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), tok.line, tok.column);
    }
    std::vector<Term> args;
    args.reserve(raw.args.size());
    for (const auto& a : raw.args) args.push_back(resolve(a));
    return Term::app(f, std::move(args));
  }

  void skip_comment() {
    int nesting = 1;
    while (!at_end()) {
      char c = peek();
      advance();
      if (c == '(') ++nesting;
      if (c == ')' && --nesting == 0) return;
    }
    fail("unterminated COMMENT section");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Trs trs_;
};

void format_into(const Trs& trs, const Term& t, std::string& out) {
  if (t.is_var()) {
    out += trs.variables().at(t.var_id());
    return;
  }
  out += trs.signature()[t.symbol()].name;
  if (t.args().empty()) return;
  out.push_back('(');
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out.push_back(',');
    format_into(trs, t.args()[i], out);
  }
  out.push_back(')');
}

}  // namespace

Trs parse_trs(std::string_view text) { return TrsParser(text).parse(); }

std::string format_term(const Trs& trs, const Term& t) {
  std::string out;
  format_into(trs, t, out);
  return out;
}

std::string format_rule(const Trs& trs, const Rule& rule) {
  return format_term(trs, rule.lhs) + " -> " + format_term(trs, rule.rhs);
}

std::string format_trs(const Trs& trs) {
  std::string out = "(VAR";
  for (const auto& x : trs.variables()) out += " " + x;
  out += ")\n(RULES\n";
  for (const auto& rule : trs.rules()) out += "  " + format_rule(trs, rule) + "\n";
  out += ")\n";
  return out;
}

std::size_t count_var(const Term& t, VarId x) {
  if (t.is_var()) return t.var_id() == x ? 1 : 0;
  std::size_t n = 0;
  for (const auto& a : t.args()) n += count_var(a, x);
  return n;
}

void count_vars(const Term& t, std::vector<std::size_t>& counts) {
  if (t.is_var()) {
    if (counts.size() <= t.var_id()) counts.resize(t.var_id() + 1, 0);
    ++counts[t.var_id()];
    return;
  }
  for (const auto& a : t.args()) count_vars(a, counts);
}

bool contains_var(const Term& t, VarId x) {
  if (t.is_var()) return t.var_id() == x;
  return std::any_of(t.args().begin(), t.args().end(), [x](const Term& a) { return contains_var(a, x); });
}

void collect_symbols(const Term& t, std::vector<bool>& seen, std::vector<SymbolId>& out) {
  if (t.is_var()) return;
  if (seen.size() <= t.symbol()) seen.resize(t.symbol() + 1, false);
  if (!seen[t.symbol()]) {
    seen[t.symbol()] = true;
    out.push_back(t.symbol());
  }
  for (const auto& a : t.args()) collect_symbols(a, seen, out);
}

std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, depth(a));
  return t.is_var() || t.args().empty() ? d : d + 1;
}

}  // namespace termcheck
