#include "polynomial.hpp"

#include <algorithm>
#include <map>

namespace termcheck::detail {

namespace {

constexpr std::size_t kMaxTerms = 20000;

std::int64_t mul64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}

std::int64_t add64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}

PowerProduct multiply(const PowerProduct& a, const PowerProduct& b) {
  PowerProduct out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

bool mul128(__int128 a, __int128 b, __int128& out) { return !__builtin_mul_overflow(a, b, &out); }

bool power_product_value(const PowerProduct& vars, const auto& value_of, __int128& out) {
  out = 1;
  for (const auto& [p, e] : vars) {
    for (std::uint32_t k = 0; k < e; ++k) {
      if (!mul128(out, static_cast<__int128>(value_of(p)), out)) return false;
    }
  }
  return true;
}

}  // namespace

Polynomial Polynomial::constant(std::int64_t c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({c, {}});
  return p;
}

Polynomial Polynomial::param(std::uint32_t index) {
  Polynomial p;
  p.terms_.push_back({1, {{index, 1}}});
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const PolyTerm& a, const PolyTerm& b) { return a.vars < b.vars; });
  std::vector<PolyTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().vars == t.vars) {
      merged.back().coef = add64(merged.back().coef, t.coef);
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const PolyTerm& t) { return t.coef == 0; });
  terms_ = std::move(merged);
  if (terms_.size() > kMaxTerms) throw OverflowError();
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial r = *this;
  r.terms_.insert(r.terms_.end(), other.terms_.begin(), other.terms_.end());
  r.normalize();
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial r = *this;
  for (auto t : other.terms_) {
    t.coef = -t.coef;
    r.terms_.push_back(std::move(t));
  }
  r.normalize();
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial r;
  if (terms_.size() * other.terms_.size() > kMaxTerms) throw OverflowError();
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) r.terms_.push_back({mul64(a.coef, b.coef), multiply(a.vars, b.vars)});
  }
  r.normalize();
  return r;
}

BoundConstraint::BoundConstraint(const Polynomial& poly, std::int64_t min) : min_(min) {
  for (const auto& t : poly.terms()) {
    for (const auto& [p, e] : t.vars) params_.push_back(p);
  }
  std::sort(params_.begin(), params_.end());
  params_.erase(std::unique(params_.begin(), params_.end()), params_.end());

  for (std::size_t s = 0; s <= params_.size(); ++s) {
    std::uint32_t boundary = s == 0 ? 0 : params_[s - 1] + 1;  // indices below are assigned
    std::map<PowerProduct, std::vector<Part>> groups;
    for (const auto& t : poly.terms()) {
      auto split = std::find_if(t.vars.begin(), t.vars.end(), [&](const auto& v) { return v.first >= boundary; });
      groups[PowerProduct(split, t.vars.end())].push_back({t.coef, PowerProduct(t.vars.begin(), split)});
    }
    std::vector<Group> stage;
    for (auto& [free, parts] : groups) stage.push_back({std::move(parts), free});
    stages_.push_back(std::move(stage));
  }
}

bool BoundConstraint::feasible(std::size_t assigned, const std::vector<Natural>& values,
                               const std::vector<Interval>& domains) const {
  std::size_t s = std::lower_bound(params_.begin(), params_.end(), assigned) - params_.begin();
  __int128 upper = 0;
  for (const auto& g : stages_[s]) {
    __int128 c = 0;
    for (const auto& part : g.parts) {
      __int128 v;
      if (!power_product_value(part.assigned, [&](std::uint32_t p) { return values[p]; }, v) ||
          !mul128(v, part.coef, v) || __builtin_add_overflow(c, v, &c)) {
        return true;
      }
    }
    if (c == 0) continue;
    __int128 m;
    bool ok = c > 0 ? power_product_value(g.free, [&](std::uint32_t p) { return domains[p].hi; }, m)
                    : power_product_value(g.free, [&](std::uint32_t p) { return domains[p].lo; }, m);
    if (!ok || !mul128(m, c, m) || __builtin_add_overflow(upper, m, &upper)) return true;
  }
  return upper >= min_;
}

namespace {

Polynomial entry_poly(const SearchSpace& space, const ParamRef& ref) {
  auto idx = space.index_of(ref);
  const Interval& d = space.domains[*idx];
  if (d.lo == d.hi) return Polynomial::constant(static_cast<std::int64_t>(d.lo));
  return Polynomial::param(static_cast<std::uint32_t>(*idx));
}

using SymMatrix = std::vector<Polynomial>;  // row-major

SymMatrix mat_mul(const SymMatrix& a, const SymMatrix& b, std::size_t n, std::size_t m) {
  // a: n x n, b: n x m
  SymMatrix r(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Polynomial sum;
      for (std::size_t k = 0; k < n; ++k) sum = sum + a[i * n + k] * b[k * m + j];
      r[i * m + j] = std::move(sum);
    }
  }
  return r;
}

void mat_add_into(SymMatrix& a, const SymMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] + b[i];
}

SymbolicForm symbolic_form(const SearchSpace& space, const Term& t) {
  const std::size_t d = space.dim;
  if (t.is_var()) {
    SymMatrix id(d * d);
    for (std::size_t i = 0; i < d; ++i) id[i * d + i] = Polynomial::constant(1);
    return SymbolicForm{{{t.var_id(), std::move(id)}}, SymMatrix(d)};
  }
  SymbolicForm out;
  out.constant.resize(d);
  for (std::uint32_t r = 0; r < d; ++r) {
    out.constant[r] = entry_poly(space, {ParamRef::Kind::Const, t.symbol(), 0, r, 0});
  }
  for (std::uint32_t i = 0; i < t.args().size(); ++i) {
    SymMatrix coeff(d * d);
    for (std::uint32_t r = 0; r < d; ++r) {
      for (std::uint32_t c = 0; c < d; ++c) {
        coeff[r * d + c] = entry_poly(space, {ParamRef::Kind::Coeff, t.symbol(), i, r, c});
      }
    }
    SymbolicForm arg = symbolic_form(space, t.args()[i]);
    mat_add_into(out.constant, mat_mul(coeff, arg.constant, d, 1));
    for (auto& [x, m] : arg.coeffs) {
      SymMatrix contribution = mat_mul(coeff, m, d, d);
      auto it = std::find_if(out.coeffs.begin(), out.coeffs.end(), [x = x](const auto& e) { return e.first == x; });
      if (it == out.coeffs.end()) {
        out.coeffs.emplace_back(x, std::move(contribution));
      } else {
        mat_add_into(it->second, contribution);
      }
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<BoundConstraint>> orientation_constraints(const SearchSpace& space, const Rule& rule) {
  try {
    const std::size_t d = space.dim;
    SymbolicForm l = symbolic_form(space, rule.lhs);
    SymbolicForm r = symbolic_form(space, rule.rhs);
    std::vector<BoundConstraint> out;
    for (const auto& [x, rc] : r.coeffs) {
      auto it = std::find_if(l.coeffs.begin(), l.coeffs.end(), [x = x](const auto& e) { return e.first == x; });
      for (std::size_t k = 0; k < d * d; ++k) {
        Polynomial lk = it == l.coeffs.end() ? Polynomial() : it->second[k];
        out.emplace_back(lk - rc[k], 0);
      }
    }
    for (std::size_t k = 0; k < d; ++k) out.emplace_back(l.constant[k] - r.constant[k], k == 0 ? 1 : 0);
    return out;
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

BoundConstraint weight_constraint(const SearchSpace& space, const Rule& rule) {
  std::map<SymbolId, std::int64_t> symbol_balance;
  std::int64_t var_balance = 0;
  auto walk = [&](auto&& self, const Term& t, std::int64_t sign) -> void {
    if (t.is_var()) {
      var_balance += sign;
      return;
    }
    symbol_balance[t.symbol()] += sign;
    for (const auto& a : t.args()) self(self, a, sign);
  };
  walk(walk, rule.lhs, 1);
  walk(walk, rule.rhs, -1);

  Polynomial p = Polynomial::constant(var_balance) * entry_poly(space, {ParamRef::Kind::W0, 0, 0, 0, 0});
  for (const auto& [f, n] : symbol_balance) {
    p = p + Polynomial::constant(n) * entry_poly(space, {ParamRef::Kind::Weight, f, 0, 0, 0});
  }
  return BoundConstraint(p, 0);
}

}  // namespace termcheck::detail
