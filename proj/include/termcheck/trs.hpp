#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace termcheck {

using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const Symbol&) const = default;
};

/// A first-order term: a variable or a function symbol applied to arguments.
/// Symbols and variables are identified by their index in the owning Trs.
class Term {
 public:
  static Term var(VarId id) { return Term(true, id, {}); }
  static Term app(SymbolId f, std::vector<Term> args = {}) { return Term(false, f, std::move(args)); }

  bool is_var() const { return is_var_; }
  VarId var_id() const { return id_; }
  SymbolId symbol() const { return id_; }
  const std::vector<Term>& args() const { return args_; }

  bool operator==(const Term&) const = default;

 private:
  Term(bool is_var, std::uint32_t id, std::vector<Term> args)
      : is_var_(is_var), id_(id), args_(std::move(args)) {}

  bool is_var_;
  std::uint32_t id_;
  std::vector<Term> args_;
};

struct Rule {
  Term lhs;
  Term rhs;

  bool operator==(const Rule&) const = default;
};

/// Symbols in first-occurrence order with a fixed arity per name.
class Signature {
 public:
  /// Returns the id of `name`, adding it with `arity` if new.
  /// Throws ValidationError if the name is known with a different arity.
  SymbolId intern(const std::string& name, std::size_t arity);
  std::optional<SymbolId> find(std::string_view name) const;

  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  bool operator==(const Signature& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
};

/// A term rewrite system. Built incrementally, then treated as immutable.
class Trs {
 public:
  VarId declare_variable(const std::string& name);
  std::optional<VarId> find_variable(std::string_view name) const;
  SymbolId intern_symbol(const std::string& name, std::size_t arity) { return signature_.intern(name, arity); }

  /// Throws ValidationError if the lhs is a variable or the rhs has extra variables.
  void add_rule(Term lhs, Term rhs);

  const Signature& signature() const { return signature_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Rule>& rules() const { return rules_; }

  bool operator==(const Trs& other) const {
    return signature_ == other.signature_ && variables_ == other.variables_ && rules_ == other.rules_;
  }

 private:
  Signature signature_;
  std::vector<std::string> variables_;
  std::vector<Rule> rules_;
};

/// Parses the classic TPDB format `(VAR x y) (RULES l -> r ...)`.
/// COMMENT sections are skipped. Throws ParseError or ValidationError.
Trs parse_trs(std::string_view text);

std::string format_term(const Trs& trs, const Term& t);
std::string format_rule(const Trs& trs, const Rule& rule);
std::string format_trs(const Trs& trs);

// Small term utilities shared by the orders, interpretations and tests.

/// Number of occurrences of variable `x` in `t`.
std::size_t count_var(const Term& t, VarId x);
/// Adds the occurrence count of every variable to `counts` (indexed by VarId, grown as needed).
void count_vars(const Term& t, std::vector<std::size_t>& counts);
bool contains_var(const Term& t, VarId x);
/// Appends each symbol of `t` the first time it is seen (`seen` indexed by SymbolId).
void collect_symbols(const Term& t, std::vector<bool>& seen, std::vector<SymbolId>& out);
std::size_t depth(const Term& t);

}  // namespace termcheck
