#include "termcheck/solver.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include "polynomial.hpp"
#include "termcheck/error.hpp"

namespace termcheck {

std::string method_name(Method m) {
  switch (m) {
    case Method::Lpo:
      return "lpo";
    case Method::Kbo:
      return "kbo";
    case Method::Poly:
      return "poly";
    case Method::Matrix:
      return "matrix";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
  for (Method m : {Method::Lpo, Method::Kbo, Method::Poly, Method::Matrix}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string reason_name(MaybeReason r) {
  switch (r) {
    case MaybeReason::Exhausted:
      return "Exhausted";
    case MaybeReason::TemplateUnsatisfiable:
      return "TemplateUnsatisfiable";
    case MaybeReason::Timeout:
      return "Timeout";
  }
  return "?";
}

Candidate Certificate::candidate() const {
  switch (method) {
    case Method::Lpo:
      return Candidate{&precedence, nullptr, nullptr};
    case Method::Kbo:
      return Candidate{&precedence, &weights, nullptr};
    case Method::Poly:
    case Method::Matrix:
      break;
  }
  return Candidate{nullptr, nullptr, &interp};
}

std::optional<std::size_t> SearchSpace::index_of(const ParamRef& ref) const {
  auto it = std::find(params.begin(), params.end(), ref);
  if (it == params.end()) return std::nullopt;
  return static_cast<std::size_t>(it - params.begin());
}

const Interval& SearchSpace::domain(const ParamRef& ref) const {
  auto idx = index_of(ref);
  if (!idx) throw std::out_of_range("parameter not in search space");
  return domains[*idx];
}

SearchSpace initial_space(const Trs& trs, Method method, const SearchConfig& cfg, std::size_t dim) {
  using K = ParamRef::Kind;
  const Signature& sig = trs.signature();
  const auto n = static_cast<SymbolId>(sig.size());
  SearchSpace space{method, method == Method::Matrix ? dim : 1, cfg.mode, {}, {}};
  auto add = [&](ParamRef ref, Natural lo, Natural hi) {
    space.params.push_back(ref);
    space.domains.push_back({lo, hi});
  };
  auto add_levels = [&] {
    for (SymbolId f = 0; f < n; ++f) add({K::Level, f}, 0, n - 1);
  };

  switch (method) {
    case Method::Lpo:
      add_levels();
      break;
    case Method::Kbo:
      add({K::W0}, 1, std::max<Natural>(cfg.weight_bound, 1));
      for (SymbolId f = 0; f < n; ++f) add({K::Weight, f}, 0, cfg.weight_bound);
      add_levels();
      break;
    case Method::Poly:
    case Method::Matrix: {
      const Natural bound = method == Method::Poly ? cfg.coeff_bound : cfg.entry_bound;
      const auto d = static_cast<std::uint32_t>(space.dim);
      for (SymbolId f = 0; f < n; ++f) {
        for (std::uint32_t i = 0; i < sig[f].arity; ++i) {
          for (std::uint32_t r = 0; r < d; ++r) {
            for (std::uint32_t c = 0; c < d; ++c) {
              // Monotonicity: top-left entries are positive.
              add({K::Coeff, f, i, r, c}, r == 0 && c == 0 ? 1 : 0, bound);
            }
          }
        }
        for (std::uint32_t r = 0; r < d; ++r) add({K::Const, f, 0, r, 0}, 0, bound);
      }
      break;
    }
  }
  return space;
}

namespace {

constexpr Natural kUnbounded = std::numeric_limits<Natural>::max();

bool fits_method(const CheckedAtom& atom, Method m, std::size_t dim) {
  if (std::holds_alternative<CheckedPrecAtom>(atom)) return m == Method::Lpo || m == Method::Kbo;
  if (std::holds_alternative<CheckedWeightsAtom>(atom) || std::holds_alternative<W0Atom>(atom)) {
    return m == Method::Kbo;
  }
  if (m != Method::Poly && m != Method::Matrix) return false;
  const auto& inters = std::get<CheckedIntersAtom>(atom);
  return std::all_of(inters.shapes.begin(), inters.shapes.end(),
                     [&](const auto& s) { return s.second.constant.rows == dim; });
}

void check_fits(const CheckedFormula& f, Method m, std::size_t dim) {
  if (f.atom && !fits_method(*f.atom, m, dim)) {
    throw ConfigError("template does not apply to method " + method_name(m));
  }
  for (const auto& c : f.children) check_fits(c, m, dim);
}

}  // namespace

std::optional<Restriction> restrict_domains(const Conjunction& disjunct, SearchSpace space) {
  using K = ParamRef::Kind;
  std::vector<Interval> wanted(space.params.size(), Interval{0, kUnbounded});
  Restriction out{{}, {}, {}};

  auto narrow = [&](const ParamRef& ref, Natural lo, Natural hi) {
    auto idx = space.index_of(ref);
    if (!idx) throw ConfigError("template constrains a parameter the method does not have");
    wanted[*idx].lo = std::max(wanted[*idx].lo, lo);
    wanted[*idx].hi = std::min(wanted[*idx].hi, hi);
  };

  for (const auto& lit : disjunct) {
    if (lit.negated) {
      out.post_filters.push_back(lit);
      continue;
    }
    if (const auto* p = std::get_if<CheckedPrecAtom>(&lit.atom)) {
      for (std::size_t i = 0; i < p->rels.size(); ++i) {
        SymbolId a = p->symbols[i];
        SymbolId b = p->symbols[i + 1];
        PrecRel rel = p->rels[i];
        if (a == b && rel == PrecRel::Greater) return std::nullopt;
        if (a != b && rel == PrecRel::Equal && space.mode == PrecedenceMode::Strict) return std::nullopt;
        out.level_constraints.push_back({a, b, rel});
      }
    } else if (const auto* w = std::get_if<CheckedWeightsAtom>(&lit.atom)) {
      for (SymbolId f : w->symbols) {
        switch (w->rel) {
          case WeightRel::Equal:
            narrow({K::Weight, f}, w->weight, w->weight);
            break;
          case WeightRel::AtMost:
            narrow({K::Weight, f}, 0, w->weight);
            break;
          case WeightRel::AtLeast:
            narrow({K::Weight, f}, w->weight, kUnbounded);
            break;
        }
      }
    } else if (const auto* w0 = std::get_if<W0Atom>(&lit.atom)) {
      narrow({K::W0}, w0->weight, w0->weight);
    } else {
      for (const auto& [f, shape] : std::get<CheckedIntersAtom>(lit.atom).shapes) {
        for (std::uint32_t i = 0; i < shape.coeffs.size(); ++i) {
          const Pattern& p = shape.coeffs[i];
          for (std::uint32_t r = 0; r < p.rows; ++r) {
            for (std::uint32_t c = 0; c < p.cols; ++c) {
              if (auto v = p.entries[r * p.cols + c]) narrow({K::Coeff, f, i, r, c}, *v, *v);
            }
          }
        }
        for (std::uint32_t r = 0; r < shape.constant.rows; ++r) {
          if (auto v = shape.constant.entries[r]) narrow({K::Const, f, 0, r, 0}, *v, *v);
        }
      }
    }
  }

  for (std::size_t i = 0; i < space.params.size(); ++i) {
    Interval& d = space.domains[i];
    const Interval& t = wanted[i];
    Natural lo = std::max(d.lo, t.lo);
    Natural hi = t.hi != kUnbounded ? t.hi : std::max(d.hi, t.lo);
    d = {lo, hi};
    if (d.empty()) return std::nullopt;
  }
  out.space = std::move(space);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class Searcher {
 public:
  Searcher(const Trs& trs, const Restriction& restriction, const Conjunction& disjunct,
           std::optional<Clock::time_point> deadline)
      : trs_(trs), space_(restriction.space), disjunct_(disjunct), deadline_(deadline) {
    init_certificate();
    values_.assign(space_.params.size(), 0);
    checks_at_.resize(space_.params.size());
    bounds_at_.resize(space_.params.size());
    build_checks(restriction.level_constraints);
    build_bounds();
  }

  std::optional<Certificate> run() {
    for (const auto& b : bounds_) {
      if (!b.feasible(0, values_, space_.domains)) return std::nullopt;
    }
    if (dfs(0)) return cert_;
    return std::nullopt;
  }

  bool timed_out() const { return timed_out_; }

 private:
  using K = ParamRef::Kind;

  void init_certificate() {
    const Signature& sig = trs_.signature();
    cert_.method = space_.method;
    cert_.precedence = Precedence{std::vector<Natural>(sig.size(), 0), space_.mode};
    cert_.weights = WeightFn{1, std::vector<Natural>(sig.size(), 0)};
    cert_.interp.kind = space_.method == Method::Matrix ? InterpKind::Matrix : InterpKind::Poly;
    cert_.interp.dim = space_.dim;
    if (space_.method == Method::Poly || space_.method == Method::Matrix) {
      for (const auto& s : sig.symbols()) {
        cert_.interp.symbols.push_back(
            SymbolInterp{std::vector<Matrix>(s.arity, Matrix(space_.dim, space_.dim)), Matrix(space_.dim, 1)});
      }
    }
  }

  std::size_t idx(ParamRef ref) const { return *space_.index_of(ref); }

  void add_check(std::size_t ready, std::function<bool()> check) { checks_at_[ready].push_back(std::move(check)); }

  std::vector<SymbolId> rule_symbols(const Rule& rule) const {
    std::vector<bool> seen;
    std::vector<SymbolId> out;
    collect_symbols(rule.lhs, seen, out);
    collect_symbols(rule.rhs, seen, out);
    return out;
  }

  void build_checks(const std::vector<LevelConstraint>& level_constraints) {
    const Signature& sig = trs_.signature();
    const Method m = space_.method;
    if (m != Method::Lpo && m != Method::Kbo) return;

    for (const auto& lc : level_constraints) {
      std::size_t ready = std::max(idx({K::Level, lc.higher}), idx({K::Level, lc.lower}));
      add_check(ready, [this, lc] {
        Natural a = cert_.precedence.levels[lc.higher];
        Natural b = cert_.precedence.levels[lc.lower];
        switch (lc.rel) {
          case PrecRel::Greater:
            return a > b;
          case PrecRel::Equal:
            return a == b;
          case PrecRel::GreaterEqual:
            return a >= b;
        }
        return false;
      });
    }

    for (const auto& rule : trs_.rules()) {
      std::size_t ready = m == Method::Kbo ? idx({K::W0}) : 0;
      for (SymbolId f : rule_symbols(rule)) {
        ready = std::max(ready, idx({K::Level, f}));
        if (m == Method::Kbo) ready = std::max(ready, idx({K::Weight, f}));
      }
      const Rule* r = &rule;
      if (m == Method::Lpo) {
        add_check(ready, [this, r] { return lpo_gt(cert_.precedence, r->lhs, r->rhs); });
      } else {
        add_check(ready, [this, r] { return kbo_gt(cert_.precedence, cert_.weights, r->lhs, r->rhs); });
      }
    }

    if (m != Method::Kbo) return;
    for (SymbolId f = 0; f < sig.size(); ++f) {
      if (sig[f].arity == 0) {
        add_check(std::max(idx({K::W0}), idx({K::Weight, f})),
                  [this, f] { return cert_.weights.weights[f] >= cert_.weights.w0; });
      } else if (sig[f].arity == 1) {
        for (SymbolId g = 0; g < sig.size(); ++g) {
          if (g == f) continue;
          std::size_t ready = std::max({idx({K::Weight, f}), idx({K::Level, f}), idx({K::Level, g})});
          add_check(ready, [this, f, g] {
            return cert_.weights.weights[f] != 0 ||
                   prec_compare(cert_.precedence, f, g) != PrecOrder::Incomparable;
          });
        }
      }
    }
  }

  void build_bounds() {
    for (const auto& rule : trs_.rules()) {
      if (space_.method == Method::Kbo) {
        bounds_.push_back(detail::weight_constraint(space_, rule));
      } else if (space_.method == Method::Poly || space_.method == Method::Matrix) {
        if (auto cs = detail::orientation_constraints(space_, rule)) {
          bounds_.insert(bounds_.end(), cs->begin(), cs->end());
        }
      }
    }
    for (std::size_t b = 0; b < bounds_.size(); ++b) {
      for (auto p : bounds_[b].params()) bounds_at_[p].push_back(b);
    }
  }

  void assign(std::size_t k, Natural v) {
    values_[k] = v;
    const ParamRef& ref = space_.params[k];
    switch (ref.kind) {
      case K::W0:
        cert_.weights.w0 = v;
        break;
      case K::Weight:
        cert_.weights.weights[ref.symbol] = v;
        break;
      case K::Level:
        cert_.precedence.levels[ref.symbol] = v;
        break;
      case K::Coeff:
        cert_.interp.symbols[ref.symbol].coeffs[ref.arg](ref.row, ref.col) = v;
        break;
      case K::Const:
        cert_.interp.symbols[ref.symbol].constant(ref.row, 0) = v;
        break;
    }
  }

  bool consistent(std::size_t k) const {
    for (const auto& check : checks_at_[k]) {
      if (!check()) return false;
    }
    for (std::size_t b : bounds_at_[k]) {
      if (!bounds_[b].feasible(k + 1, values_, space_.domains)) return false;
    }
    return true;
  }

  bool expired() {
    if (!deadline_ || ++nodes_ % 1024 != 0) return false;
    if (Clock::now() >= *deadline_) timed_out_ = true;
    return timed_out_;
  }

  bool leaf() const {
    if (!check_certificate(trs_, cert_)) return false;
    const Candidate c = cert_.candidate();
    return std::all_of(disjunct_.begin(), disjunct_.end(), [&](const Literal& l) { return literal_holds(l, c); });
  }

  bool dfs(std::size_t k) {
    if (k == space_.params.size()) return leaf();
    const Interval d = space_.domains[k];
    for (Natural v = d.lo;; ++v) {
      if (expired()) return false;
      assign(k, v);
      if (consistent(k) && dfs(k + 1)) return true;
      if (timed_out_ || v == d.hi) return false;
    }
  }

  const Trs& trs_;
  const SearchSpace& space_;
  const Conjunction& disjunct_;
  std::optional<Clock::time_point> deadline_;

  Certificate cert_;
  std::vector<Natural> values_;
  std::vector<std::vector<std::function<bool()>>> checks_at_;
  std::vector<detail::BoundConstraint> bounds_;
  std::vector<std::vector<std::size_t>> bounds_at_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

Outcome prove(const Trs& trs, Method method, const SearchConfig& cfg, const CheckedTemplate* tmpl) {
  std::size_t dim = 1;
  if (method == Method::Matrix) {
    if (tmpl && tmpl->dim && cfg.dim && *tmpl->dim != *cfg.dim) {
      throw ConfigError("template dimension " + std::to_string(*tmpl->dim) + " conflicts with -dim " +
                        std::to_string(*cfg.dim));
    }
    dim = tmpl && tmpl->dim ? *tmpl->dim : cfg.dim.value_or(2);
    if (dim == 0) throw ConfigError("dimension must be at least 1");
  }
  if (tmpl) check_fits(tmpl->formula, method, dim);

  SearchConfig effective = cfg;
  if (tmpl && tmpl->quasi) effective.mode = PrecedenceMode::Quasi;

  std::optional<Clock::time_point> deadline;
  if (cfg.time_limit) deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(*cfg.time_limit);

  const SearchSpace space = initial_space(trs, method, effective, dim);
  const Dnf disjuncts = tmpl ? to_dnf(tmpl->formula) : Dnf{Conjunction{}};

  bool any_satisfiable = false;
  for (const auto& disjunct : disjuncts) {
    auto restriction = restrict_domains(disjunct, space);
    if (!restriction) continue;
    any_satisfiable = true;
    Searcher searcher(trs, *restriction, disjunct, deadline);
    if (auto cert = searcher.run()) {
      if (auto check = check_certificate(trs, *cert, tmpl); !check) {
        throw std::logic_error("internal error: found certificate fails validation: " + check.reasons.front());
      }
      return Outcome::yes(std::move(*cert));
    }
    if (searcher.timed_out()) return Outcome::maybe(MaybeReason::Timeout);
  }
  return Outcome::maybe(any_satisfiable ? MaybeReason::Exhausted : MaybeReason::TemplateUnsatisfiable);
}

namespace {

void check_coverage(const Trs& trs, const Certificate& cert, CertificateCheck& result) {
  const Signature& sig = trs.signature();
  auto fail = [&](std::string reason) {
    result.valid = false;
    result.reasons.push_back(std::move(reason));
  };
  if ((cert.method == Method::Lpo || cert.method == Method::Kbo) && cert.precedence.levels.size() < sig.size()) {
    fail("precedence does not cover the signature");
  }
  if (cert.method == Method::Kbo && cert.weights.weights.size() < sig.size()) fail("weights do not cover the signature");
  if (cert.method == Method::Poly || cert.method == Method::Matrix) {
    const Interpretation& in = cert.interp;
    if (in.symbols.size() < sig.size()) {
      fail("interpretation does not cover the signature");
      return;
    }
    if (in.dim == 0 || (cert.method == Method::Poly && in.dim != 1)) fail("bad dimension");
    for (SymbolId f = 0; f < sig.size(); ++f) {
      const SymbolInterp& si = in.symbols[f];
      bool shape_ok = si.coeffs.size() == sig[f].arity && si.constant.rows() == in.dim && si.constant.cols() == 1 &&
                      std::all_of(si.coeffs.begin(), si.coeffs.end(),
                                  [&](const Matrix& m) { return m.rows() == in.dim && m.cols() == in.dim; });
      if (!shape_ok) fail("interpretation of '" + sig[f].name + "' has the wrong shape");
    }
  }
}

}  // namespace

CertificateCheck check_certificate(const Trs& trs, const Certificate& cert, const CheckedTemplate* tmpl) {
  CertificateCheck result;
  check_coverage(trs, cert, result);
  if (!result.valid) return result;
  auto fail = [&](std::string reason) {
    result.valid = false;
    result.reasons.push_back(std::move(reason));
  };

  try {
    switch (cert.method) {
      case Method::Lpo:
        for (const auto& rule : trs.rules()) {
          if (!lpo_gt(cert.precedence, rule.lhs, rule.rhs)) fail("rule not oriented: " + format_rule(trs, rule));
        }
        break;
      case Method::Kbo:
        if (!kbo_admissible(cert.precedence, cert.weights, trs.signature())) fail("weights are not admissible");
        for (const auto& rule : trs.rules()) {
          if (!kbo_gt(cert.precedence, cert.weights, rule.lhs, rule.rhs)) {
            fail("rule not oriented: " + format_rule(trs, rule));
          }
        }
        break;
      case Method::Poly:
      case Method::Matrix:
        if (!monotone(cert.interp)) fail("interpretation is not monotone");
        for (const auto& rule : trs.rules()) {
          if (orients(cert.interp, rule) != Orientation::Strict) fail("rule not oriented: " + format_rule(trs, rule));
        }
        break;
    }
    if (tmpl && !evaluate(tmpl->formula, cert.candidate())) fail("template not satisfied");
  } catch (const Error& e) {
    fail(e.what());
  }
  return result;
}

std::string format_certificate(const Trs& trs, const Certificate& cert) {
  const Signature& sig = trs.signature();
  std::string out;
  auto line = [&](const std::string& label, const std::string& body) {
    out += label + (body.empty() ? "" : " " + body) + "\n";
  };
  switch (cert.method) {
    case Method::Lpo:
    case Method::Kbo: {
      bool quasi = cert.precedence.mode == PrecedenceMode::Quasi;
      line(quasi ? "quasi-precedence:" : "precedence:", format_precedence(cert.precedence, sig));
      if (cert.method == Method::Lpo) break;
      line("w0:", std::to_string(cert.weights.w0));
      std::string weights;
      for (SymbolId f = 0; f < sig.size(); ++f) {
        if (f > 0) weights += ", ";
        weights += sig[f].name + " = " + std::to_string(cert.weights.weights[f]);
      }
      line("weights:", weights);
      break;
    }
    case Method::Poly:
    case Method::Matrix:
      if (cert.method == Method::Matrix) line("dimension:", std::to_string(cert.interp.dim));
      for (SymbolId f = 0; f < sig.size(); ++f) {
        out += "[" + sig[f].name + "] = " + format_symbol_interp(cert.interp.kind, cert.interp.symbols[f]) + "\n";
      }
      break;
  }
  return out;
}

}  // namespace termcheck
