#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "termcheck/interp.hpp"
#include "termcheck/orders.hpp"
#include "termcheck/template.hpp"
#include "termcheck/trs.hpp"

namespace termcheck {

enum class Method { Lpo, Kbo, Poly, Matrix };

std::string method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

struct SearchConfig {
  Natural weight_bound = 7;
  Natural coeff_bound = 3;
  Natural entry_bound = 3;
  /// Matrix dimension; the template's dimension wins, then this, then 2.
  std::optional<std::size_t> dim;
  PrecedenceMode mode = PrecedenceMode::Strict;
  std::optional<std::chrono::duration<double>> time_limit;
};

/// Fully instantiated parameters. Only the parts used by `method` are meaningful.
struct Certificate {
  Method method = Method::Lpo;
  Precedence precedence;
  WeightFn weights;
  Interpretation interp;

  Candidate candidate() const;
  bool operator==(const Certificate&) const = default;
};

enum class MaybeReason { Exhausted, TemplateUnsatisfiable, Timeout };

std::string reason_name(MaybeReason r);

class Outcome {
 public:
  static Outcome yes(Certificate c) { return Outcome(std::move(c)); }
  static Outcome maybe(MaybeReason r) { return Outcome(r); }

  bool is_yes() const { return std::holds_alternative<Certificate>(value_); }
  const Certificate& certificate() const { return std::get<Certificate>(value_); }
  MaybeReason reason() const { return std::get<MaybeReason>(value_); }

  bool operator==(const Outcome&) const = default;

 private:
  explicit Outcome(std::variant<Certificate, MaybeReason> v) : value_(std::move(v)) {}
  std::variant<Certificate, MaybeReason> value_;
};

// ---------------------------------------------------------------------------
// Search space

/// One unknown of a method: a weight, a precedence level, or a matrix entry.
struct ParamRef {
  enum class Kind { W0, Weight, Level, Coeff, Const };
  Kind kind = Kind::W0;
  SymbolId symbol = 0;
  std::uint32_t arg = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  auto operator<=>(const ParamRef&) const = default;
};

struct Interval {
  Natural lo = 0;
  Natural hi = 0;

  bool empty() const { return lo > hi; }
  bool operator==(const Interval&) const = default;
};

/// Parameters in enumeration order, each with its domain.
struct SearchSpace {
  Method method = Method::Lpo;
  std::size_t dim = 1;
  PrecedenceMode mode = PrecedenceMode::Strict;
  std::vector<ParamRef> params;
  std::vector<Interval> domains;

  std::optional<std::size_t> index_of(const ParamRef& ref) const;
  const Interval& domain(const ParamRef& ref) const;
};

/// Unrestricted space within the configured bounds. Symbols keep signature
/// order; KBO enumerates w0, then weights, then levels.
SearchSpace initial_space(const Trs& trs, Method method, const SearchConfig& cfg, std::size_t dim);

/// level(higher) > level(lower), or >= when `or_equal`, or == when `equal`.
struct LevelConstraint {
  SymbolId higher = 0;
  SymbolId lower = 0;
  PrecRel rel = PrecRel::Greater;

  bool operator==(const LevelConstraint&) const = default;
};

struct Restriction {
  SearchSpace space;
  std::vector<LevelConstraint> level_constraints;
  /// Literals only checkable on complete candidates (negations).
  Conjunction post_filters;
};

/// Positive atoms shrink domains or become level constraints; negated atoms
/// become post-filters. Returns nullopt when a domain becomes empty.
/// Values fixed by a template may exceed the configured bounds.
std::optional<Restriction> restrict_domains(const Conjunction& disjunct, SearchSpace space);

// ---------------------------------------------------------------------------

/// Returns the first valid candidate in enumeration order, trying the
/// template's disjuncts in order. Every YES is rechecked by check_certificate.
/// Throws ConfigError for templates that do not fit the method.
Outcome prove(const Trs& trs, Method method, const SearchConfig& cfg, const CheckedTemplate* tmpl = nullptr);

struct CertificateCheck {
  bool valid = true;
  std::vector<std::string> reasons;

  explicit operator bool() const { return valid; }
};

/// Independent validation: orientation of every rule, admissibility or
/// monotonicity, and the template (if any) by structural evaluation.
CertificateCheck check_certificate(const Trs& trs, const Certificate& cert, const CheckedTemplate* tmpl = nullptr);

/// Proof block lines after the method name, e.g. `precedence: + > s ~ 0`.
std::string format_certificate(const Trs& trs, const Certificate& cert);

}  // namespace termcheck
