#include <cctype>
#include <functional>
#include <set>

#include "termcheck/error.hpp"
#include "termcheck/template.hpp"

namespace termcheck {

namespace {

enum class AtomKind { Prec, Weights, Inters };

class TemplateParser {
 public:
  TemplateParser(std::string_view text, AtomKind kind, InterpKind mode) : text_(text), kind_(kind), mode_(mode) {}

  TemplateAst parse() {
    std::vector<TemplateAst> items{combination()};
    for (skip_ws(); peek() == ','; skip_ws()) {
      advance();
      items.push_back(combination());
    }
    skip_ws();
    if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
    if (items.size() == 1) return std::move(items.front());
    return TemplateAst::list(std::move(items));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  bool looking_at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !at_end(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
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

  struct Mark {
    std::size_t pos, line, column;
  };
  Mark mark() const { return {pos_, line_, column_}; }
  void reset(Mark m) {
    pos_ = m.pos;
    line_ = m.line;
    column_ = m.column;
  }

  // Keyword followed (after optional whitespace) by '('.
  bool keyword(std::string_view word) {
    skip_ws();
    if (!looking_at(word)) return false;
    Mark m = mark();
    advance(word.size());
    skip_ws();
    if (peek() == '(') {
      advance();
      return true;
    }
    reset(m);
    return false;
  }

  TemplateAst combination() {
    if (keyword("NOT")) {
      TemplateAst inner = combination();
      expect(')');
      return TemplateAst::negation(std::move(inner));
    }
    bool is_and = keyword("AND");
    if (is_and || keyword("OR")) {
      std::vector<TemplateAst> items{combination()};
      for (skip_ws(); peek() == ','; skip_ws()) {
        advance();
        items.push_back(combination());
      }
      expect(')');
      return is_and ? TemplateAst::conjunction(std::move(items)) : TemplateAst::disjunction(std::move(items));
    }
    switch (kind_) {
      case AtomKind::Prec:
        return TemplateAst::leaf(prec_atom());
      case AtomKind::Weights:
        return TemplateAst::leaf(weights_atom());
      case AtomKind::Inters:
        break;
    }
    return TemplateAst::leaf(inters_atom());
  }

  static bool symbol_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' && c != '=' &&
           c != '>' && c != '<';
  }

  std::string symbol() {
    skip_ws();
    std::string name;
    while (!at_end() && symbol_char(peek())) {
      name.push_back(peek());
      advance();
    }
    if (name.empty()) fail("expected a function symbol");
    return name;
  }

  // ---- prec: fun (('>' | '=' | '>=') fun)+

  std::optional<PrecRel> prec_rel() {
    skip_ws();
    if (looking_at(">=")) {
      advance(2);
      return PrecRel::GreaterEqual;
    }
    if (peek() == '>') {
      advance();
      return PrecRel::Greater;
    }
    if (peek() == '=') {
      advance();
      return PrecRel::Equal;
    }
    return std::nullopt;
  }

  PrecAtom prec_atom() {
    PrecAtom atom;
    atom.symbols.push_back(symbol());
    while (auto rel = prec_rel()) {
      atom.rels.push_back(*rel);
      atom.symbols.push_back(symbol());
      if (*rel != PrecRel::Greater) atom.quasi = true;
    }
    if (atom.rels.empty()) fail("expected '>', '=' or '>='");
    return atom;
  }

  // ---- weights: (fun '=')* fun ('=' | '<=' | '>=') weight

  std::optional<WeightRel> weight_rel() {
    skip_ws();
    if (looking_at("<=")) {
      advance(2);
      return WeightRel::AtMost;
    }
    if (looking_at(">=")) {
      advance(2);
      return WeightRel::AtLeast;
    }
    if (peek() == '=') {
      advance();
      return WeightRel::Equal;
    }
    return std::nullopt;
  }

  static std::optional<Natural> numeral(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return std::nullopt;
    }
    Natural v = 0;
    for (char c : s) v = checked_add(checked_mul(v, 10), static_cast<Natural>(c - '0'));
    return v;
  }

  WeightsAtom weights_atom() {
    WeightsAtom atom;
    atom.symbols.push_back(symbol());
    auto rel = weight_rel();
    if (!rel) fail("expected '=', '<=' or '>='");
    while (true) {
      Mark before = mark();
      std::string item = symbol();
      auto next = weight_rel();
      if (!next) {
        auto w = numeral(item);
        if (!w) {
          reset(before);
          skip_ws();
          fail("expected a weight");
        }
        atom.rel = *rel;
        atom.weight = *w;
        return atom;
      }
      if (*rel != WeightRel::Equal) {
        reset(before);
        fail("only the last relation of a weights template may be '<=' or '>='");
      }
      atom.symbols.push_back(item);
      rel = next;
    }
  }

  // ---- inters: (fun '=')+ ((const? var | const | underscore) + '+')

  IntersAtom inters_atom() {
    IntersAtom atom;
    atom.mode = mode_;
    while (true) {
      Mark before = mark();
      skip_ws();
      std::string name;
      while (!at_end() && symbol_char(peek())) {
        name.push_back(peek());
        advance();
      }
      skip_ws();
      if (name.empty() || peek() != '=') {
        reset(before);
        break;
      }
      advance();
      atom.symbols.push_back(std::move(name));
    }
    if (atom.symbols.empty()) fail("expected a function symbol followed by '='");

    std::set<std::size_t> seen_vars;
    bool seen_const = false;
    do {
      skip_ws();
      Mark start = mark();
      Monomial m = monomial();
      if (auto* v = std::get_if<VarMonomial>(&m)) {
        if (!seen_vars.insert(v->index).second) {
          reset(start);
          fail("variable x" + std::to_string(v->index) + " occurs twice");
        }
      } else if (std::holds_alternative<ConstMonomial>(m)) {
        if (seen_const) {
          reset(start);
          fail("constant part given twice");
        }
        seen_const = true;
      }
      atom.monomials.push_back(std::move(m));
      skip_ws();
    } while (peek() == '+' && (advance(), true));
    return atom;
  }

  bool at_var() const { return peek() == 'x' && std::isdigit(static_cast<unsigned char>(peek(1))); }

  std::size_t var_index() {
    advance();  // 'x'
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits.push_back(peek());
      advance();
    }
    return static_cast<std::size_t>(*numeral(digits));
  }

  // Optional variable right after a coefficient.
  std::optional<std::size_t> trailing_var() {
    Mark m = mark();
    skip_ws();
    if (at_var()) return var_index();
    reset(m);
    return std::nullopt;
  }

  Natural nat() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits.push_back(peek());
      advance();
    }
    if (digits.empty()) fail("expected a natural number");
    return *numeral(digits);
  }

  MatrixLit matrix_literal() {
    Mark start = mark();
    advance();  // '['
    MatrixLit lit;
    std::size_t cols_in_row = 0;
    while (true) {
      skip_ws();
      if (peek() == '_') {
        advance();
        lit.entries.emplace_back(std::nullopt);
      } else {
        lit.entries.emplace_back(nat());
      }
      ++cols_in_row;
      skip_ws();
      if (peek() == ',') {
        advance();
        continue;
      }
      if (lit.rows == 0) {
        lit.cols = cols_in_row;
      } else if (cols_in_row != lit.cols) {
        reset(start);
        fail("ragged matrix literal");
      }
      ++lit.rows;
      cols_in_row = 0;
      if (peek() == ';') {
        advance();
        continue;
      }
      if (peek() == ']') {
        advance();
        return lit;
      }
      fail("expected ',', ';' or ']'");
    }
  }

  Monomial monomial() {
    if (peek() == '_') {
      advance();
      if (at_var()) return VarMonomial{Hole{}, var_index()};
      return HoleMonomial{};
    }
    if (at_var()) return VarMonomial{std::nullopt, var_index()};
    if (peek() == '[') {
      if (mode_ == InterpKind::Poly) fail("matrix literal in a polynomial template");
      MatrixLit lit = matrix_literal();
      if (auto x = trailing_var()) return VarMonomial{std::move(lit), *x};
      return ConstMonomial{std::move(lit)};
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Mark start = mark();
      Natural k = nat();
      if (auto x = trailing_var()) return VarMonomial{k, *x};
      if (mode_ == InterpKind::Poly) return ConstMonomial{k};
      if (k > 1) {
        reset(start);
        fail("matrix constants are literals or the shorthands 0 and 1");
      }
      return ConstMonomial{k == 0 ? VectorShorthand::Zero : VectorShorthand::One};
    }
    fail("expected a monomial");
  }

  std::string_view text_;
  AtomKind kind_;
  InterpKind mode_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string format_prec_rel(PrecRel r) {
  switch (r) {
    case PrecRel::Greater:
      return ">";
    case PrecRel::Equal:
      return "=";
    case PrecRel::GreaterEqual:
      return ">=";
  }
  return "?";
}

std::string format_weight_rel(WeightRel r) {
  switch (r) {
    case WeightRel::Equal:
      return "=";
    case WeightRel::AtMost:
      return "<=";
    case WeightRel::AtLeast:
      return ">=";
  }
  return "?";
}

std::string format_lit(const MatrixLit& lit) {
  std::string out = "[";
  for (std::size_t i = 0; i < lit.rows; ++i) {
    if (i > 0) out += ";";
    for (std::size_t j = 0; j < lit.cols; ++j) {
      if (j > 0) out += ",";
      const auto& e = lit.entries[i * lit.cols + j];
      out += e ? std::to_string(*e) : "_";
    }
  }
  return out + "]";
}

struct MonomialFormatter {
  std::string operator()(const VarMonomial& v) const {
    std::string coef;
    if (v.coef) {
      coef = std::visit(
          [](const auto& c) -> std::string {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, Natural>) {
              return std::to_string(c);
            } else if constexpr (std::is_same_v<C, MatrixLit>) {
              return format_lit(c);
            } else {
              return "_";
            }
          },
          *v.coef);
    }
    return coef + "x" + std::to_string(v.index);
  }
  std::string operator()(const ConstMonomial& c) const {
    return std::visit(
        [](const auto& value) -> std::string {
          using C = std::decay_t<decltype(value)>;
          if constexpr (std::is_same_v<C, Natural>) {
            return std::to_string(value);
          } else if constexpr (std::is_same_v<C, MatrixLit>) {
            return format_lit(value);
          } else {
            return value == VectorShorthand::Zero ? "0" : "1";
          }
        },
        c.value);
  }
  std::string operator()(const HoleMonomial&) const { return "_"; }
};

}  // namespace

TemplateAst parse_prec(std::string_view text) { return TemplateParser(text, AtomKind::Prec, InterpKind::Poly).parse(); }

TemplateAst parse_weights(std::string_view text) {
  return TemplateParser(text, AtomKind::Weights, InterpKind::Poly).parse();
}

TemplateAst parse_inters(std::string_view text, InterpKind mode) {
  return TemplateParser(text, AtomKind::Inters, mode).parse();
}

std::string format_atom(const Atom& atom) {
  if (const auto* p = std::get_if<PrecAtom>(&atom)) {
    std::string out = p->symbols.front();
    for (std::size_t i = 0; i < p->rels.size(); ++i) out += " " + format_prec_rel(p->rels[i]) + " " + p->symbols[i + 1];
    return out;
  }
  if (const auto* w = std::get_if<WeightsAtom>(&atom)) {
    std::string out;
    for (std::size_t i = 0; i < w->symbols.size(); ++i) {
      out += w->symbols[i] + (i + 1 < w->symbols.size() ? " = " : " ");
    }
    return out + format_weight_rel(w->rel) + " " + std::to_string(w->weight);
  }
  if (const auto* w0 = std::get_if<W0Atom>(&atom)) return "w0 = " + std::to_string(w0->weight);
  const auto& inters = std::get<IntersAtom>(atom);
  std::string out;
  for (const auto& f : inters.symbols) out += f + " = ";
  for (std::size_t i = 0; i < inters.monomials.size(); ++i) {
    if (i > 0) out += " + ";
    out += std::visit(MonomialFormatter{}, inters.monomials[i]);
  }
  return out;
}

namespace {

std::string format_node(const TemplateAst& ast, bool top) {
  switch (ast.kind) {
    case Connective::Atom:
      return format_atom(*ast.atom);
    case Connective::Not:
      return "NOT(" + format_node(ast.children.front(), false) + ")";
    case Connective::And:
    case Connective::Or: {
      bool bare = top && ast.listed && ast.children.size() > 1;
      std::string out = bare ? "" : ast.kind == Connective::And ? "AND(" : "OR(";
      for (std::size_t i = 0; i < ast.children.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_node(ast.children[i], false);
      }
      return bare ? out : out + ")";
    }
  }
  return {};
}

}  // namespace

std::string format_template(const TemplateAst& ast) { return format_node(ast, true); }

bool uses_quasi(const TemplateAst& ast) {
  if (ast.kind == Connective::Atom) {
    const auto* p = std::get_if<PrecAtom>(&*ast.atom);
    return p != nullptr && p->quasi;
  }
  return std::any_of(ast.children.begin(), ast.children.end(), [](const TemplateAst& c) { return uses_quasi(c); });
}

}  // namespace termcheck
