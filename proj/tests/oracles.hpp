#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "termcheck/interp.hpp"
#include "termcheck/orders.hpp"
#include "termcheck/solver.hpp"
#include "termcheck/trs.hpp"

namespace oracle {

using namespace termcheck;

constexpr const char* kAdditionTrs = "(VAR x y)(RULES +(0,y) -> y  +(s(x),y) -> s(+(x,y)))";

/// Textbook LPO via the "s >= t" formulation.
bool lpo_greater(const Precedence& p, const Term& s, const Term& t);

/// Textbook KBO with explicit occurrence maps.
bool kbo_greater(const Precedence& p, const WeightFn& wf, const Term& s, const Term& t);

/// Direct recursive evaluation of [t] at a vector assignment.
std::vector<Natural> eval_term(const Interpretation& in, const Term& t,
                               const std::map<VarId, std::vector<Natural>>& assignment);

/// Orientation decided by evaluation only: the linear coefficient of each
/// variable is read off as [t](e_x) - [t](0) column by column.
bool orients_by_evaluation(const Interpretation& in, const Rule& rule, std::size_t num_vars);

/// Is there any candidate within the bounds (exhaustive enumeration)?
bool exists_lpo(const Trs& trs, PrecedenceMode mode);
bool exists_kbo(const Trs& trs, Natural weight_bound, PrecedenceMode mode);
/// Linear interpretations of the given dimension with entries <= bound.
bool exists_interp(const Trs& trs, std::size_t dim, Natural bound);

/// Random term of depth <= max_depth over `trs`'s signature and variables.
Term random_term(std::mt19937& rng, const Trs& trs, std::size_t max_depth, bool ground = false);

/// Random well-formed TRS over f/2, g/1, a/0, b/0 with variables x, y.
Trs random_trs(std::mt19937& rng, std::size_t max_rules, std::size_t max_depth);

Precedence random_precedence(std::mt19937& rng, std::size_t n, PrecedenceMode mode);
/// Admissible for `sig` (unary weight-zero symbols are made maximal).
std::pair<Precedence, WeightFn> random_admissible_kbo(std::mt19937& rng, const Signature& sig);
Interpretation random_interp(std::mt19937& rng, const Signature& sig, InterpKind kind, std::size_t dim,
                             Natural max_entry);

/// All vectors of `dim` naturals in [0, max]^dim.
std::vector<std::vector<Natural>> grid(std::size_t dim, Natural max);

Term parse_term(const Trs& trs, const std::string& text);

}  // namespace oracle

#include "termcheck/template.hpp"

namespace oracle {

/// Random NOT/AND/OR combination of prec, weights, w0 and poly inters atoms
/// over the addition signature.
termcheck::TemplateAst random_template(std::mt19937& rng, int depth);

/// Some disjunct has all literals true.
bool holds_by_dnf(const termcheck::Dnf& dnf, const termcheck::Candidate& c);

}  // namespace oracle
