#include "termcheck/orders.hpp"

#include <algorithm>
#include <numeric>

namespace termcheck {

namespace {

Natural level_of(const Precedence& p, SymbolId f) {
  if (f >= p.levels.size()) throw ValidationError("symbol " + std::to_string(f) + " has no precedence level");
  return p.levels[f];
}

Natural weight_of(const WeightFn& wf, SymbolId f) {
  if (f >= wf.weights.size()) throw ValidationError("symbol " + std::to_string(f) + " has no weight");
  return wf.weights[f];
}

// Index of the first argument pair that differs, or args.size() if none does.
std::size_t first_difference(const std::vector<Term>& ss, const std::vector<Term>& ts) {
  std::size_t i = 0;
  while (i < ss.size() && ss[i] == ts[i]) ++i;
  return i;
}

bool dominates_args(const Precedence& p, const Term& s, const Term& t) {
  return std::all_of(t.args().begin(), t.args().end(), [&](const Term& tj) { return lpo_gt(p, s, tj); });
}

}  // namespace

PrecOrder prec_compare(const Precedence& p, SymbolId f, SymbolId g) {
  Natural lf = level_of(p, f);
  Natural lg = level_of(p, g);
  if (lf > lg) return PrecOrder::Greater;
  if (f == g || (lf == lg && p.mode == PrecedenceMode::Quasi)) return PrecOrder::Equal;
  return PrecOrder::Incomparable;
}

bool lpo_gt(const Precedence& p, const Term& s, const Term& t) {
  if (s.is_var()) return false;
  if (t.is_var()) return contains_var(s, t.var_id());

  for (const auto& si : s.args()) {
    if (si == t || lpo_gt(p, si, t)) return true;
  }

  switch (prec_compare(p, s.symbol(), t.symbol())) {
    case PrecOrder::Greater:
      return dominates_args(p, s, t);
    case PrecOrder::Equal: {
      if (s.args().size() != t.args().size()) return false;
      std::size_t i = first_difference(s.args(), t.args());
      if (i == s.args().size() || !lpo_gt(p, s.args()[i], t.args()[i])) return false;
      return dominates_args(p, s, t);
    }
    case PrecOrder::Incomparable:
      break;
  }
  return false;
}

Natural kbo_weight(const WeightFn& wf, const Term& t) {
  if (t.is_var()) return wf.w0;
  Natural w = weight_of(wf, t.symbol());
  for (const auto& a : t.args()) w = checked_add(w, kbo_weight(wf, a));
  return w;
}

bool kbo_admissible(const Precedence& p, const WeightFn& wf, const Signature& sig) {
  if (wf.w0 == 0) return false;
  for (SymbolId f = 0; f < sig.size(); ++f) {
    Natural w = weight_of(wf, f);
    if (sig[f].arity == 0 && w < wf.w0) return false;
    if (sig[f].arity == 1 && w == 0) {
      for (SymbolId g = 0; g < sig.size(); ++g) {
        if (prec_compare(p, f, g) == PrecOrder::Incomparable) return false;
      }
    }
  }
  return true;
}

bool kbo_gt(const Precedence& p, const WeightFn& wf, const Term& s, const Term& t) {
  if (s.is_var()) return false;

  std::vector<std::size_t> s_vars;
  std::vector<std::size_t> t_vars;
  count_vars(s, s_vars);
  count_vars(t, t_vars);
  for (std::size_t x = 0; x < t_vars.size(); ++x) {
    if (t_vars[x] > (x < s_vars.size() ? s_vars[x] : 0)) return false;
  }

  Natural ws = kbo_weight(wf, s);
  Natural wt = kbo_weight(wf, t);
  if (ws != wt) return ws > wt;

  if (t.is_var()) {
    // s must be f^n(x) for a unary f of weight zero.
    SymbolId f = s.symbol();
    if (s.args().size() != 1 || weight_of(wf, f) != 0) return false;
    const Term* cur = &s;
    while (!cur->is_var()) {
      if (cur->symbol() != f || cur->args().size() != 1) return false;
      cur = &cur->args()[0];
    }
    return cur->var_id() == t.var_id();
  }

  switch (prec_compare(p, s.symbol(), t.symbol())) {
    case PrecOrder::Greater:
      return true;
    case PrecOrder::Equal: {
      if (s.args().size() != t.args().size()) return false;
      std::size_t i = first_difference(s.args(), t.args());
      return i < s.args().size() && kbo_gt(p, wf, s.args()[i], t.args()[i]);
    }
    case PrecOrder::Incomparable:
      break;
  }
  return false;
}

std::string format_precedence(const Precedence& p, const Signature& sig) {
  std::vector<SymbolId> order(sig.size());
  std::iota(order.begin(), order.end(), SymbolId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](SymbolId a, SymbolId b) { return level_of(p, a) > level_of(p, b); });
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out += level_of(p, order[i - 1]) == level_of(p, order[i]) ? " ~ " : " > ";
    out += sig[order[i]].name;
  }
  return out;
}

}  // namespace termcheck
