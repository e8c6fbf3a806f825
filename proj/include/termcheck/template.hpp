#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "termcheck/interp.hpp"
#include "termcheck/natural.hpp"
#include "termcheck/orders.hpp"
#include "termcheck/trs.hpp"

namespace termcheck {

// ---------------------------------------------------------------------------
// Boolean combinations

enum class Connective { Atom, Not, And, Or };

/// NOT/AND/OR over atoms of type A. And/Or nodes have at least one child,
/// Not exactly one.
template <class A>
struct Formula {
  Connective kind = Connective::Atom;
  std::optional<A> atom;
  std::vector<Formula> children;
  /// A top-level comma list rather than an explicit AND; printing only.
  bool listed = false;

  static Formula leaf(A a) { return Formula{Connective::Atom, std::move(a), {}}; }
  static Formula negation(Formula f) { return Formula{Connective::Not, std::nullopt, {std::move(f)}}; }
  static Formula conjunction(std::vector<Formula> fs) { return Formula{Connective::And, std::nullopt, std::move(fs)}; }
  static Formula disjunction(std::vector<Formula> fs) { return Formula{Connective::Or, std::nullopt, std::move(fs)}; }
  static Formula list(std::vector<Formula> fs) { return Formula{Connective::And, std::nullopt, std::move(fs), true}; }

  bool operator==(const Formula&) const = default;
};

// ---------------------------------------------------------------------------
// Parsed atoms (symbols still by name)

enum class PrecRel { Greater, Equal, GreaterEqual };

/// `f > g >= h`: symbols[i] rels[i] symbols[i+1].
struct PrecAtom {
  std::vector<std::string> symbols;
  std::vector<PrecRel> rels;
  bool quasi = false;

  bool operator==(const PrecAtom&) const = default;
};

enum class WeightRel { Equal, AtMost, AtLeast };

/// `f = g <= 5`: the relation applies to every listed symbol.
struct WeightsAtom {
  std::vector<std::string> symbols;
  WeightRel rel = WeightRel::Equal;
  Natural weight = 0;

  bool operator==(const WeightsAtom&) const = default;
};

/// Fixes w0 (the `-w0` flag).
struct W0Atom {
  Natural weight = 1;

  bool operator==(const W0Atom&) const = default;
};

struct Hole {
  bool operator==(const Hole&) const = default;
};

/// `[1,_;0,1]`: row-major, nullopt entries are holes.
struct MatrixLit {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::optional<Natural>> entries;

  bool operator==(const MatrixLit&) const = default;
};

enum class VectorShorthand { Zero, One };

/// A scalar is k (poly) or k times the identity (matrix).
using Coefficient = std::variant<Natural, MatrixLit, Hole>;
using ConstantPart = std::variant<Natural, MatrixLit, VectorShorthand>;

struct VarMonomial {
  std::optional<Coefficient> coef;  // absent: identity
  std::size_t index = 0;

  bool operator==(const VarMonomial&) const = default;
};

struct ConstMonomial {
  ConstantPart value;

  bool operator==(const ConstMonomial&) const = default;
};

struct HoleMonomial {
  bool operator==(const HoleMonomial&) const = default;
};

using Monomial = std::variant<VarMonomial, ConstMonomial, HoleMonomial>;

/// `f = g = 2x0 + _`.
struct IntersAtom {
  std::vector<std::string> symbols;
  std::vector<Monomial> monomials;
  InterpKind mode = InterpKind::Poly;

  bool operator==(const IntersAtom&) const = default;
};

using Atom = std::variant<PrecAtom, WeightsAtom, W0Atom, IntersAtom>;
using TemplateAst = Formula<Atom>;

/// Parse errors carry 1-based positions into `text`.
TemplateAst parse_prec(std::string_view text);
TemplateAst parse_weights(std::string_view text);
TemplateAst parse_inters(std::string_view text, InterpKind mode);

/// Canonical text; reparsing it yields a structurally equal AST.
std::string format_template(const TemplateAst& ast);
std::string format_atom(const Atom& atom);

/// True iff some prec atom uses `=` or `>=`.
bool uses_quasi(const TemplateAst& ast);

// ---------------------------------------------------------------------------
// Validated atoms (symbols resolved against a signature)

struct CheckedPrecAtom {
  std::vector<SymbolId> symbols;
  std::vector<PrecRel> rels;

  bool operator==(const CheckedPrecAtom&) const = default;
};

struct CheckedWeightsAtom {
  std::vector<SymbolId> symbols;
  WeightRel rel = WeightRel::Equal;
  Natural weight = 0;

  bool operator==(const CheckedWeightsAtom&) const = default;
};

/// Required entries of a matrix; nullopt entries are unconstrained.
struct Pattern {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::optional<Natural>> entries;

  static Pattern free(std::size_t rows, std::size_t cols);
  static Pattern exact(const Matrix& m);
  bool matches(const Matrix& m) const;

  bool operator==(const Pattern&) const = default;
};

/// What an inters atom demands of one symbol.
struct InterpShape {
  std::vector<Pattern> coeffs;
  Pattern constant;

  bool operator==(const InterpShape&) const = default;
};

struct CheckedIntersAtom {
  std::vector<std::pair<SymbolId, InterpShape>> shapes;

  bool operator==(const CheckedIntersAtom&) const = default;
};

using CheckedAtom = std::variant<CheckedPrecAtom, CheckedWeightsAtom, W0Atom, CheckedIntersAtom>;
using CheckedFormula = Formula<CheckedAtom>;

struct CheckedTemplate {
  CheckedFormula formula;
  std::optional<std::size_t> dim;  // set when an inters atom is present
  bool quasi = false;
};

/// Resolves symbols and checks variable indices and matrix dimensions.
/// The dimension is inferred from matrix literals; `external_dim` (the `-dim`
/// flag) must agree with it and is required when no literal fixes it.
CheckedTemplate validate(const TemplateAst& ast, const Signature& sig,
                         std::optional<std::size_t> external_dim = std::nullopt);

// ---------------------------------------------------------------------------
// Normal form and semantics

struct Literal {
  CheckedAtom atom;
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

using Conjunction = std::vector<Literal>;
using Dnf = std::vector<Conjunction>;

constexpr std::size_t kMaxDisjuncts = 4096;

/// Disjuncts keep the left-to-right order of the formula.
/// Throws ValidationError beyond kMaxDisjuncts.
Dnf to_dnf(const CheckedFormula& f);

/// Fully instantiated parameters of some method; absent parts are not part of the method.
struct Candidate {
  const Precedence* precedence = nullptr;
  const WeightFn* weights = nullptr;
  const Interpretation* interp = nullptr;
};

/// Throws ValidationError if the candidate lacks what the atom talks about.
bool atom_holds(const CheckedAtom& atom, const Candidate& c);
bool literal_holds(const Literal& lit, const Candidate& c);
/// Structural evaluation of the formula (no normalization).
bool evaluate(const CheckedFormula& f, const Candidate& c);

}  // namespace termcheck
