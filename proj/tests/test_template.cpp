#include <doctest.h>

#include "oracles.hpp"
#include "termcheck/error.hpp"
#include "termcheck/template.hpp"

using namespace termcheck;

namespace {

const Trs& addition() {
  static const Trs trs = parse_trs(oracle::kAdditionTrs);
  return trs;
}

const Signature& fgh() {
  static const Trs trs = parse_trs("(VAR x y)(RULES f(x) -> x  g(x,y) -> x  h(x,y) -> y)");
  return trs.signature();
}

template <class T>
const T& atom_of(const TemplateAst& ast) {
  REQUIRE(ast.kind == Connective::Atom);
  return std::get<T>(*ast.atom);
}

const char* kPrecPool[] = {"+ > s", "s > 0", "+ > 0", "+ = s", "0 >= s", "+ > s > 0", "s = 0", "+ >= 0"};
const char* kWeightsPool[] = {"+ = 0", "s = 1", "+ = s <= 1", "0 >= 2", "s = 0 = 1", "+ <= 2"};
const char* kIntersPool[] = {"0 = _",     "s = x0 + 1", "+ = _ + 2", "0 = 1",       "s = _ + 1",
                             "+ = x0 + x1", "s = 2x0 + _", "0 = 0",   "+ = 2x0 + _", "s = x0 + _"};

// Like oracle::random_template but with prec atoms only, so it can be reparsed.
TemplateAst random_prec_ast(std::mt19937& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) return parse_prec(kPrecPool[rng() % std::size(kPrecPool)]);
  if (rng() % 3 == 0) return TemplateAst::negation(random_prec_ast(rng, depth - 1));
  std::vector<TemplateAst> children;
  std::size_t n = 1 + rng() % 3;
  for (std::size_t i = 0; i < n; ++i) children.push_back(random_prec_ast(rng, depth - 1));
  return rng() % 2 ? TemplateAst::conjunction(std::move(children)) : TemplateAst::disjunction(std::move(children));
}

}  // namespace

TEST_CASE("parse_prec") {
  auto chain = parse_prec("+ > s > 0");
  const auto& a = atom_of<PrecAtom>(chain);
  CHECK(a.symbols == std::vector<std::string>{"+", "s", "0"});
  CHECK(a.rels == std::vector<PrecRel>{PrecRel::Greater, PrecRel::Greater});
  CHECK_FALSE(a.quasi);

  auto quasi = parse_prec("f > g = h");
  CHECK(atom_of<PrecAtom>(quasi).quasi);
  auto geq = parse_prec("f >= g");
  CHECK(atom_of<PrecAtom>(geq).quasi);

  auto nested = parse_prec("NOT(AND(f > g, f > h))");
  REQUIRE(nested.kind == Connective::Not);
  REQUIRE(nested.children[0].kind == Connective::And);
  CHECK(atom_of<PrecAtom>(nested.children[0].children[1]).symbols == std::vector<std::string>{"f", "h"});

  CHECK_THROWS_AS(parse_prec("f"), ParseError);
  CHECK_THROWS_AS(parse_prec("AND(f > g"), ParseError);
  CHECK_THROWS_AS(parse_prec("f > g >"), ParseError);
  CHECK(parse_prec("OR (f > g, g > f)").kind == Connective::Or);
}

TEST_CASE("parse_weights") {
  auto all = parse_weights("+ = s = 0 = 1");
  const auto& a = atom_of<WeightsAtom>(all);
  CHECK(a.symbols == std::vector<std::string>{"+", "s", "0"});
  CHECK(a.rel == WeightRel::Equal);
  CHECK(a.weight == 1);

  auto bounded = parse_weights("f = g <= 5");
  const auto& b = atom_of<WeightsAtom>(bounded);
  CHECK(b.symbols == std::vector<std::string>{"f", "g"});
  CHECK(b.rel == WeightRel::AtMost);
  CHECK(b.weight == 5);

  CHECK_THROWS_AS(parse_weights("f ="), ParseError);
  CHECK_THROWS_AS(parse_weights("f <= g = 2"), ParseError);
}

TEST_CASE("parse_inters") {
  auto m = parse_inters("0 = 0, s = x0 + 1, + = [1,1;0,1]x0 + x1 + [1;0]", InterpKind::Matrix);
  REQUIRE(m.kind == Connective::And);
  REQUIRE(m.children.size() == 3);
  const auto& plus = atom_of<IntersAtom>(m.children[2]);
  REQUIRE(plus.monomials.size() == 3);
  const auto& first = std::get<VarMonomial>(plus.monomials[0]);
  const auto& lit = std::get<MatrixLit>(*first.coef);
  CHECK(lit.rows == 2);
  CHECK(lit.cols == 2);
  const auto& constant = std::get<MatrixLit>(std::get<ConstMonomial>(plus.monomials[2]).value);
  CHECK(constant.rows == 2);
  CHECK(constant.cols == 1);

  auto p = parse_inters("AND(+ = _ + 2, OR(NOT(0 = 0), s = x0 + 1))", InterpKind::Poly);
  REQUIRE(p.kind == Connective::And);
  CHECK(p.children[1].kind == Connective::Or);
  CHECK(p.children[1].children[0].kind == Connective::Not);

  auto tri = parse_inters("f=g=h=[1,_,_;0,1,_;0,0,1]x0+_", InterpKind::Matrix);
  const auto& t = atom_of<IntersAtom>(tri);
  CHECK(t.symbols == std::vector<std::string>{"f", "g", "h"});
  REQUIRE(t.monomials.size() == 2);
  CHECK(std::get<MatrixLit>(*std::get<VarMonomial>(t.monomials[0]).coef).rows == 3);
  CHECK(std::holds_alternative<HoleMonomial>(t.monomials[1]));

  CHECK_THROWS_AS(parse_inters("f = [1,2;3]x0", InterpKind::Matrix), ParseError);
  CHECK_THROWS_AS(parse_inters("f = [1;0]", InterpKind::Poly), ParseError);
  CHECK_THROWS_AS(parse_inters("f = x0 + x0", InterpKind::Poly), ParseError);
}

TEST_CASE("validate") {
  auto m = parse_inters("0 = 0, s = x0 + 1, + = [1,1;0,1]x0 + x1 + [1;0]", InterpKind::Matrix);
  CHECK(validate(m, addition().signature()).dim == std::optional<std::size_t>(2));
  CHECK_THROWS_AS(validate(m, addition().signature(), 3), ValidationError);

  CHECK_THROWS_AS(validate(parse_inters("s = x1 + 1", InterpKind::Poly), addition().signature()), ValidationError);
  CHECK_THROWS_AS(validate(parse_inters("q = x0", InterpKind::Poly), addition().signature()), ValidationError);
  CHECK_THROWS_AS(validate(parse_prec("+ > q"), addition().signature()), ValidationError);
  CHECK_THROWS_AS(validate(parse_inters("+ = [1,0;0,1]x0 + [1;0;0]", InterpKind::Matrix), addition().signature()),
                  ValidationError);

  auto tri = parse_inters("f=g=h=[1,_,_;0,1,_;0,0,1]x0+_, g=h=[1,_,_;0,1,_;0,0,1]x1+_", InterpKind::Matrix);
  CHECK(validate(tri, fgh()).dim == std::optional<std::size_t>(3));
}

TEST_CASE("to_dnf examples") {
  const Signature& sig = addition().signature();
  auto a = parse_prec("+ > s");
  auto b = parse_prec("s > 0");
  auto c = parse_prec("+ > 0");
  auto lit = [&](const TemplateAst& x, bool neg) { return Literal{*validate(x, sig).formula.atom, neg}; };

  CHECK(to_dnf(validate(TemplateAst::conjunction({a, b}), sig).formula) ==
        Dnf{{lit(a, false), lit(b, false)}});
  CHECK(to_dnf(validate(TemplateAst::conjunction({a, TemplateAst::disjunction({TemplateAst::negation(b), c})}), sig)
                   .formula) == Dnf{{lit(a, false), lit(b, true)}, {lit(a, false), lit(c, false)}});
  CHECK(to_dnf(validate(TemplateAst::negation(TemplateAst::conjunction({a, b})), sig).formula) ==
        Dnf{{lit(a, true)}, {lit(b, true)}});
}

TEST_CASE("to_dnf size cap") {
  std::vector<TemplateAst> ors;
  for (int i = 0; i < 13; ++i) ors.push_back(TemplateAst::disjunction({parse_prec("+ > s"), parse_prec("s > 0")}));
  auto big = validate(TemplateAst::conjunction(ors), addition().signature());
  CHECK_THROWS_AS(to_dnf(big.formula), ValidationError);
}

TEST_CASE("atom semantics") {
  const Signature& sig = addition().signature();
  Precedence p{{2, 0, 1}, PrecedenceMode::Strict};
  Candidate c{&p, nullptr, nullptr};
  CHECK(evaluate(validate(parse_prec("+ > s > 0"), sig).formula, c));
  CHECK_FALSE(evaluate(validate(parse_prec("0 > s"), sig).formula, c));

  const Trs two = parse_trs("(VAR x y)(RULES f(x,y) -> x)");
  auto fixed = validate(parse_inters("f = 2x0 + x1", InterpKind::Poly), two.signature());
  Interpretation in{InterpKind::Poly, 1, {poly_symbol({2, 1}, 0)}};
  CHECK(evaluate(fixed.formula, Candidate{nullptr, nullptr, &in}));
  in.symbols[0] = poly_symbol({2, 1}, 1);
  CHECK_FALSE(evaluate(fixed.formula, Candidate{nullptr, nullptr, &in}));

  auto hole = validate(parse_inters("+ = _ + 2", InterpKind::Poly), sig);
  Interpretation add{InterpKind::Poly, 1, {poly_symbol({3, 1}, 2), poly_symbol({}, 0), poly_symbol({1}, 0)}};
  CHECK(evaluate(hole.formula, Candidate{nullptr, nullptr, &add}));
  add.symbols[0] = poly_symbol({3, 1}, 1);
  CHECK_FALSE(evaluate(hole.formula, Candidate{nullptr, nullptr, &add}));

  WeightFn wf{1, {0, 1, 1}};
  auto w = validate(parse_weights("s = 0 = 1"), sig);
  CHECK(evaluate(w.formula, Candidate{nullptr, &wf, nullptr}));
  CHECK_THROWS_AS(evaluate(w.formula, Candidate{}), ValidationError);
}

TEST_CASE("dnf preserves semantics on random formulas and candidates") {
  std::mt19937 rng(21);
  const Signature& sig = addition().signature();
  int true_count = 0;
  for (int i = 0; i < 200; ++i) {
    CheckedTemplate t = validate(oracle::random_template(rng, 4), sig);
    Dnf dnf = to_dnf(t.formula);
    for (int k = 0; k < 20; ++k) {
      Precedence p = oracle::random_precedence(rng, 3, k % 2 ? PrecedenceMode::Quasi : PrecedenceMode::Strict);
      WeightFn wf{1 + rng() % 2, {rng() % 3, rng() % 3, rng() % 3}};
      Interpretation in = oracle::random_interp(rng, sig, InterpKind::Poly, 1, 2);
      Candidate c{&p, &wf, &in};
      bool direct = evaluate(t.formula, c);
      CHECK(direct == oracle::holds_by_dnf(dnf, c));
      true_count += direct;
    }
  }
  CHECK(true_count > 200);
  CHECK(true_count < 3800);
}

TEST_CASE("templates from the examples round trip") {
  CHECK(format_template(parse_prec("+ > s > 0")) == "+ > s > 0");
  CHECK(format_template(parse_prec("NOT(AND(f > g, f > h))")) == "NOT(AND(f > g, f > h))");
  CHECK(format_template(parse_weights("+ = s = 0 = 1")) == "+ = s = 0 = 1");
  const char* matrix = "0 = 0, s = x0 + 1, + = [1,1;0,1]x0 + x1 + [1;0]";
  CHECK(format_template(parse_inters(matrix, InterpKind::Matrix)) == matrix);
  const char* poly = "AND(+ = _ + 2, OR(NOT(0 = 0), s = x0 + 1))";
  CHECK(format_template(parse_inters(poly, InterpKind::Poly)) == poly);

  auto tri = parse_inters("f=g=h=[1,_,_;0,1,_;0,0,1]x0+_, g=h=[1,_,_;0,1,_;0,0,1]x1+_", InterpKind::Matrix);
  std::string canonical = format_template(tri);
  CHECK(canonical == "f = g = h = [1,_,_;0,1,_;0,0,1]x0 + _, g = h = [1,_,_;0,1,_;0,0,1]x1 + _");
  CHECK(parse_inters(canonical, InterpKind::Matrix) == tri);
}

TEST_CASE("format/parse round trip on random templates") {
  std::mt19937 rng(12);
  for (int i = 0; i < 200; ++i) {
    TemplateAst a = random_prec_ast(rng, 4);
    CHECK(parse_prec(format_template(a)) == a);
  }
  for (const char* w : kWeightsPool) CHECK(parse_weights(format_template(parse_weights(w))) == parse_weights(w));
  for (const char* x : kIntersPool) {
    auto ast = parse_inters(x, InterpKind::Poly);
    CHECK(parse_inters(format_template(ast), InterpKind::Poly) == ast);
  }
}

TEST_CASE("quasi flag follows the relation symbols") {
  std::mt19937 rng(2);
  const char* rels[] = {" > ", " = ", " >= "};
  const char* syms[] = {"f", "g", "h", "k"};
  for (int i = 0; i < 200; ++i) {
    std::string text = syms[rng() % 4];
    std::size_t n = 1 + rng() % 3;
    for (std::size_t k = 0; k < n; ++k) text += std::string(rels[rng() % 3]) + syms[rng() % 4];
    bool expect = text.find('=') != std::string::npos;
    CHECK(uses_quasi(parse_prec(text)) == expect);
    CHECK(uses_quasi(parse_prec("NOT(" + text + ")")) == expect);
  }
}
