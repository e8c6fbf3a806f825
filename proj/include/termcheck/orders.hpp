#pragma once

#include <string>
#include <vector>

#include "termcheck/natural.hpp"
#include "termcheck/trs.hpp"

namespace termcheck {

enum class PrecedenceMode { Strict, Quasi };

enum class PrecOrder { Greater, Equal, Incomparable };

/// A precedence given as a level per symbol (indexed by SymbolId).
/// Higher level means bigger. Equal levels of distinct symbols are
/// equivalent in quasi mode and incomparable in strict mode.
struct Precedence {
  std::vector<Natural> levels;
  PrecedenceMode mode = PrecedenceMode::Strict;

  bool operator==(const Precedence&) const = default;
};

/// KBO weights: `w0` for variables, one weight per symbol (indexed by SymbolId).
struct WeightFn {
  Natural w0 = 1;
  std::vector<Natural> weights;

  bool operator==(const WeightFn&) const = default;
};

/// A symbol is always equivalent to itself, in either mode.
PrecOrder prec_compare(const Precedence& p, SymbolId f, SymbolId g);

bool lpo_gt(const Precedence& p, const Term& s, const Term& t);

Natural kbo_weight(const WeightFn& wf, const Term& t);

/// Constants weigh at least w0, and a unary symbol of weight zero is
/// greater than or equivalent to every symbol of `sig`.
bool kbo_admissible(const Precedence& p, const WeightFn& wf, const Signature& sig);

/// Assumes admissible parameters; the result is meaningless otherwise.
bool kbo_gt(const Precedence& p, const WeightFn& wf, const Term& s, const Term& t);

/// Symbols by descending level, e.g. `+ > s ~ 0`. Ties keep signature order.
std::string format_precedence(const Precedence& p, const Signature& sig);

}  // namespace termcheck
