#include <algorithm>

#include "termcheck/error.hpp"
#include "termcheck/template.hpp"

namespace termcheck {

Pattern Pattern::free(std::size_t rows, std::size_t cols) {
  return Pattern{rows, cols, std::vector<std::optional<Natural>>(rows * cols)};
}

Pattern Pattern::exact(const Matrix& m) {
  Pattern p{m.rows(), m.cols(), {}};
  p.entries.assign(m.data().begin(), m.data().end());
  return p;
}

bool Pattern::matches(const Matrix& m) const {
  if (m.rows() != rows || m.cols() != cols) return false;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] && *entries[i] != m.data()[i]) return false;
  }
  return true;
}

namespace {

SymbolId resolve_symbol(const Signature& sig, const std::string& name) {
  auto id = sig.find(name);
  if (!id) throw ValidationError("unknown function symbol '" + name + "'");
  return *id;
}

void note_dim(std::optional<std::size_t>& dim, std::size_t d, const std::string& what) {
  if (dim && *dim != d) {
    throw ValidationError("inconsistent matrix dimensions: " + what + " has dimension " + std::to_string(d) +
                          ", expected " + std::to_string(*dim));
  }
  dim = d;
}

// First pass: dimension fixed by matrix literals.
void infer_dim(const TemplateAst& ast, std::optional<std::size_t>& dim, bool& has_inters) {
  if (ast.kind != Connective::Atom) {
    for (const auto& c : ast.children) infer_dim(c, dim, has_inters);
    return;
  }
  const auto* inters = std::get_if<IntersAtom>(&*ast.atom);
  if (inters == nullptr) return;
  has_inters = true;
  if (inters->mode == InterpKind::Poly) {
    note_dim(dim, 1, "polynomial template");
    return;
  }
  for (const auto& m : inters->monomials) {
    if (const auto* v = std::get_if<VarMonomial>(&m); v && v->coef) {
      if (const auto* lit = std::get_if<MatrixLit>(&*v->coef)) {
        if (lit->rows != lit->cols) {
          throw ValidationError("coefficient of x" + std::to_string(v->index) + " is not a square matrix");
        }
        note_dim(dim, lit->rows, "coefficient of x" + std::to_string(v->index));
      }
    } else if (const auto* c = std::get_if<ConstMonomial>(&m)) {
      if (const auto* lit = std::get_if<MatrixLit>(&c->value)) {
        if (lit->cols != 1) throw ValidationError("constant part is not a column vector");
        note_dim(dim, lit->rows, "constant part");
      }
    }
  }
}

Pattern from_literal(const MatrixLit& lit) { return Pattern{lit.rows, lit.cols, lit.entries}; }

InterpShape shape_for(const IntersAtom& atom, std::size_t arity, std::size_t d) {
  bool has_hole = std::any_of(atom.monomials.begin(), atom.monomials.end(),
                              [](const Monomial& m) { return std::holds_alternative<HoleMonomial>(m); });
  Pattern unmentioned_coeff = has_hole ? Pattern::free(d, d) : Pattern::exact(Matrix(d, d));
  InterpShape shape{std::vector<Pattern>(arity, unmentioned_coeff),
                    has_hole ? Pattern::free(d, 1) : Pattern::exact(Matrix(d, 1))};

  for (const auto& m : atom.monomials) {
    if (const auto* v = std::get_if<VarMonomial>(&m)) {
      Pattern& p = shape.coeffs[v->index];
      if (!v->coef) {
        p = Pattern::exact(Matrix::identity(d));
      } else if (const auto* k = std::get_if<Natural>(&*v->coef)) {
        p = Pattern::exact(Matrix::scalar(d, *k));
      } else if (const auto* lit = std::get_if<MatrixLit>(&*v->coef)) {
        p = from_literal(*lit);
      } else {
        p = Pattern::free(d, d);
      }
    } else if (const auto* c = std::get_if<ConstMonomial>(&m)) {
      if (const auto* k = std::get_if<Natural>(&c->value)) {
        shape.constant = Pattern::exact(Matrix(d, 1, *k));
      } else if (const auto* lit = std::get_if<MatrixLit>(&c->value)) {
        shape.constant = from_literal(*lit);
      } else {
        Natural fill = std::get<VectorShorthand>(c->value) == VectorShorthand::One ? 1 : 0;
        shape.constant = Pattern::exact(Matrix(d, 1, fill));
      }
    }
  }
  return shape;
}

CheckedAtom check_atom(const Atom& atom, const Signature& sig, std::size_t d) {
  if (const auto* p = std::get_if<PrecAtom>(&atom)) {
    CheckedPrecAtom out{{}, p->rels};
    for (const auto& name : p->symbols) out.symbols.push_back(resolve_symbol(sig, name));
    return out;
  }
  if (const auto* w = std::get_if<WeightsAtom>(&atom)) {
    CheckedWeightsAtom out{{}, w->rel, w->weight};
    for (const auto& name : w->symbols) out.symbols.push_back(resolve_symbol(sig, name));
    return out;
  }
  if (const auto* w0 = std::get_if<W0Atom>(&atom)) {
    if (w0->weight == 0) throw ValidationError("w0 must be at least 1");
    return *w0;
  }
  const auto& inters = std::get<IntersAtom>(atom);
  CheckedIntersAtom out;
  for (const auto& name : inters.symbols) {
    SymbolId f = resolve_symbol(sig, name);
    std::size_t arity = sig[f].arity;
    for (const auto& m : inters.monomials) {
      if (const auto* v = std::get_if<VarMonomial>(&m); v && v->index >= arity) {
        throw ValidationError("x" + std::to_string(v->index) + " is out of range for '" + name + "' of arity " +
                              std::to_string(arity));
      }
    }
    out.shapes.emplace_back(f, shape_for(inters, arity, d));
  }
  return out;
}

CheckedFormula check_formula(const TemplateAst& ast, const Signature& sig, std::size_t d) {
  CheckedFormula out{ast.kind, std::nullopt, {}};
  if (ast.atom) out.atom = check_atom(*ast.atom, sig, d);
  for (const auto& c : ast.children) out.children.push_back(check_formula(c, sig, d));
  return out;
}

void check_size(std::size_t n) {
  if (n > kMaxDisjuncts) {
    throw ValidationError("template too large: more than " + std::to_string(kMaxDisjuncts) + " disjuncts");
  }
}

Dnf dnf(const CheckedFormula& f, bool negated) {
  switch (f.kind) {
    case Connective::Atom:
      return {{Literal{*f.atom, negated}}};
    case Connective::Not:
      return dnf(f.children.front(), !negated);
    case Connective::And:
    case Connective::Or:
      break;
  }
  bool conjunctive = (f.kind == Connective::And) != negated;
  if (!conjunctive) {
    Dnf out;
    for (const auto& c : f.children) {
      Dnf part = dnf(c, negated);
      check_size(out.size() + part.size());
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }
  Dnf out{{}};
  for (const auto& c : f.children) {
    Dnf part = dnf(c, negated);
    check_size(out.size() * part.size());
    Dnf next;
    next.reserve(out.size() * part.size());
    for (const auto& left : out) {
      for (const auto& right : part) {
        Conjunction merged = left;
        merged.insert(merged.end(), right.begin(), right.end());
        next.push_back(std::move(merged));
      }
    }
    out = std::move(next);
  }
  return out;
}

bool prec_rel_holds(PrecRel rel, PrecOrder order) {
  switch (rel) {
    case PrecRel::Greater:
      return order == PrecOrder::Greater;
    case PrecRel::Equal:
      return order == PrecOrder::Equal;
    case PrecRel::GreaterEqual:
      return order != PrecOrder::Incomparable;
  }
  return false;
}

bool weight_rel_holds(WeightRel rel, Natural w, Natural bound) {
  switch (rel) {
    case WeightRel::Equal:
      return w == bound;
    case WeightRel::AtMost:
      return w <= bound;
    case WeightRel::AtLeast:
      return w >= bound;
  }
  return false;
}

template <class T>
const T& require(const T* part, const char* what) {
  if (part == nullptr) throw ValidationError(std::string("candidate has no ") + what);
  return *part;
}

}  // namespace

CheckedTemplate validate(const TemplateAst& ast, const Signature& sig, std::optional<std::size_t> external_dim) {
  std::optional<std::size_t> dim;
  bool has_inters = false;
  infer_dim(ast, dim, has_inters);
  if (external_dim && *external_dim == 0) throw ValidationError("dimension must be at least 1");
  if (has_inters) {
    if (external_dim) note_dim(dim, *external_dim, "-dim");
    if (!dim) throw ValidationError("matrix dimension is not fixed by the template; pass -dim");
  } else {
    dim = std::nullopt;
  }
  return CheckedTemplate{check_formula(ast, sig, dim.value_or(1)), dim, uses_quasi(ast)};
}

Dnf to_dnf(const CheckedFormula& f) { return dnf(f, false); }

bool atom_holds(const CheckedAtom& atom, const Candidate& c) {
  if (const auto* p = std::get_if<CheckedPrecAtom>(&atom)) {
    const auto& prec = require(c.precedence, "precedence");
    for (std::size_t i = 0; i < p->rels.size(); ++i) {
      if (!prec_rel_holds(p->rels[i], prec_compare(prec, p->symbols[i], p->symbols[i + 1]))) return false;
    }
    return true;
  }
  if (const auto* w = std::get_if<CheckedWeightsAtom>(&atom)) {
    const auto& wf = require(c.weights, "weights");
    return std::all_of(w->symbols.begin(), w->symbols.end(), [&](SymbolId f) {
      if (f >= wf.weights.size()) throw ValidationError("candidate has no weight for symbol " + std::to_string(f));
      return weight_rel_holds(w->rel, wf.weights[f], w->weight);
    });
  }
  if (const auto* w0 = std::get_if<W0Atom>(&atom)) return require(c.weights, "weights").w0 == w0->weight;

  const auto& interp = require(c.interp, "interpretation");
  for (const auto& [f, shape] : std::get<CheckedIntersAtom>(atom).shapes) {
    if (f >= interp.symbols.size()) {
      throw ValidationError("candidate has no interpretation for symbol " + std::to_string(f));
    }
    const SymbolInterp& si = interp.symbols[f];
    if (si.coeffs.size() != shape.coeffs.size()) return false;
    for (std::size_t i = 0; i < si.coeffs.size(); ++i) {
      if (!shape.coeffs[i].matches(si.coeffs[i])) return false;
    }
    if (!shape.constant.matches(si.constant)) return false;
  }
  return true;
}

bool literal_holds(const Literal& lit, const Candidate& c) { return atom_holds(lit.atom, c) != lit.negated; }

bool evaluate(const CheckedFormula& f, const Candidate& c) {
  switch (f.kind) {
    case Connective::Atom:
      return atom_holds(*f.atom, c);
    case Connective::Not:
      return !evaluate(f.children.front(), c);
    case Connective::And:
      return std::all_of(f.children.begin(), f.children.end(), [&](const auto& ch) { return evaluate(ch, c); });
    case Connective::Or:
      return std::any_of(f.children.begin(), f.children.end(), [&](const auto& ch) { return evaluate(ch, c); });
  }
  return false;
}

}  // namespace termcheck
