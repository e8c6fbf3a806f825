#pragma once

// Multivariate integer polynomials over search parameters, used to bound
// rule constraints on partially assigned candidates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "termcheck/interp.hpp"
#include "termcheck/solver.hpp"
#include "termcheck/trs.hpp"

namespace termcheck::detail {

/// Sorted (parameter index, exponent) pairs.
using PowerProduct = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct PolyTerm {
  std::int64_t coef = 0;
  PowerProduct vars;
};

class Polynomial {
 public:
  static Polynomial constant(std::int64_t c);
  static Polynomial param(std::uint32_t index);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;

  const std::vector<PolyTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  void normalize();
  std::vector<PolyTerm> terms_;
};

/// Requires poly >= min. Parameters are assigned in index order, so at any
/// point the assigned ones are a prefix; terms are pre-grouped by their
/// unassigned part for every prefix length.
class BoundConstraint {
 public:
  BoundConstraint(const Polynomial& poly, std::int64_t min);

  const std::vector<std::uint32_t>& params() const { return params_; }

  /// False only if no completion of the assignment (params below `assigned`
  /// fixed to `values`, others ranging over `domains`) can satisfy the constraint.
  bool feasible(std::size_t assigned, const std::vector<Natural>& values, const std::vector<Interval>& domains) const;

 private:
  struct Part {
    std::int64_t coef;
    PowerProduct assigned;
  };
  struct Group {
    std::vector<Part> parts;
    PowerProduct free;
  };

  std::int64_t min_;
  std::vector<std::uint32_t> params_;
  std::vector<std::vector<Group>> stages_;  // stages_[s]: first s params assigned
};

/// Symbolic interpretation of a term: entries are polynomials in the
/// parameters of `space` (singleton domains are substituted).
struct SymbolicForm {
  std::vector<std::pair<VarId, std::vector<Polynomial>>> coeffs;  // row-major dim x dim
  std::vector<Polynomial> constant;                                // dim entries
};

/// Constraints equivalent to `orients(rule) == Strict` for interpretation
/// spaces; nullopt if the expansion gets too large to be worth it.
std::optional<std::vector<BoundConstraint>> orientation_constraints(const SearchSpace& space, const Rule& rule);

/// weight(lhs) - weight(rhs) >= 0 for KBO spaces.
BoundConstraint weight_constraint(const SearchSpace& space, const Rule& rule);

}  // namespace termcheck::detail
