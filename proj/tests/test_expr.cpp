#include <doctest.h>

#include <cmath>
#include <cctype>
#include <functional>
#include <random>

#include "cmc/expr.hpp"

using namespace cmc;
using namespace cmc::expr;

TEST_CASE("parse structure") {
  const ExprAst ast = parse("sin(x)*cosh(y)");
  REQUIRE(ast.root->kind == Node::Kind::Binary);
  CHECK(ast.root->op == BinOp::Mul);
  CHECK(ast.root->a->kind == Node::Kind::Unary);
  CHECK(ast.root->a->fn == UnaryFn::Sin);
  CHECK(ast.root->a->a->kind == Node::Kind::VarX);
  CHECK(ast.root->b->fn == UnaryFn::Cosh);
  CHECK(ast.root->b->a->kind == Node::Kind::VarY);
}

TEST_CASE("syntax error carries the byte offset") {
  try {
    parse("2/(1+x^2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset == 8);  // end of input
  }
}

TEST_CASE("unknown identifiers and parameters") {
  const ExprAst with_param = parse("H*x", {"H"});
  CHECK(with_param.root->a->kind == Node::Kind::Param);
  CHECK(with_param.root->a->name == "H");
  CHECK_THROWS_AS(parse("H*x"), ParseError);
  try {
    parse("2*qqq + 1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("qqq") != std::string::npos);
    CHECK(e.offset == 2);
  }
}

TEST_CASE("arity errors") {
  CHECK_THROWS_AS(parse("sin(x, y)"), ParseError);
  CHECK_THROWS_AS(parse("sin"), ParseError);
  CHECK_THROWS_AS(parse("sin + 1"), ParseError);
}

TEST_CASE("associativity and precedence") {
  // Left-associative subtraction and division.
  const ExprAst a = parse("1-2-3");
  double v = eval_jet(a, 0.0, 0.0, {}, 2).value();
  CHECK(v == doctest::Approx(-4.0));
  const ExprAst b = parse("8/4/2");
  CHECK(eval_jet(b, 0.0, 0.0, {}, 2).value() == doctest::Approx(1.0));
  const ExprAst c = parse("2+3*4");
  CHECK(eval_jet(c, 0.0, 0.0, {}, 2).value() == doctest::Approx(14.0));
  // Right-associative constant exponent tower and unary minus binding.
  const ExprAst d = parse("x^2^3");
  CHECK(eval_jet(d, 2.0, 0.0, {}, 2).value() == doctest::Approx(256.0));
  const ExprAst e = parse("-x^2");
  CHECK(eval_jet(e, 3.0, 0.0, {}, 2).value() == doctest::Approx(-9.0));
}

TEST_CASE("pow conventions") {
  const ExprAst ip = parse("x^-2");
  CHECK(eval_jet(ip, 2.0, 0.0, {}, 2).value() == doctest::Approx(0.25));
  const ExprAst rp = parse("x^0.5");
  CHECK(eval_jet(rp, 4.0, 0.0, {}, 2).value() == doctest::Approx(2.0));
  // Non-integer power of a negative base is a domain error.
  CHECK_THROWS_AS(eval_jet(rp, -1.0, 0.0, {}, 2), EvalError);
  // Integer powers of negative bases are fine.
  const ExprAst cube = parse("x^3");
  CHECK(eval_jet(cube, -2.0, 0.0, {}, 2).value() == doctest::Approx(-8.0));
}

TEST_CASE("domain errors name the offending node") {
  const ExprAst s = parse("1 + sqrt(x-2)");
  try {
    eval_jet(s, 1.0, 0.0, {}, 2);
    FAIL("expected an eval error");
  } catch (const EvalError& e) {
    CHECK(e.offset == 4);  // the sqrt call
    CHECK(std::string(e.what()).find("sqrt") != std::string::npos);
  }
  const ExprAst d = parse("x / (y-1)");
  CHECK_THROWS_AS(eval_jet(d, 1.0, 1.0, {}, 2), EvalError);
  const ExprAst l = parse("log(x)");
  CHECK_THROWS_AS(eval_jet(l, -0.5, 0.0, {}, 2), EvalError);
}

TEST_CASE("round trip: parse, print, parse") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::uniform_int_distribution<int> pick(0, 8);
  // Random AST builder; printing then reparsing must reproduce it.
  std::function<NodePtr(int)> build = [&](int depth) -> NodePtr {
    auto n = std::make_shared<Node>();
    const int choice = depth <= 0 ? pick(rng) % 3 : pick(rng);
    switch (choice) {
      case 0:
        n->kind = Node::Kind::Number;
        n->number = std::round(U(rng) * 16.0) / 16.0;
        if (n->number < 0) n->number = -n->number;  // negatives print as Neg
        break;
      case 1: n->kind = Node::Kind::VarX; break;
      case 2: n->kind = Node::Kind::VarY; break;
      case 3:
      case 4: {
        n->kind = Node::Kind::Binary;
        n->op = static_cast<BinOp>(pick(rng) % 4);
        n->a = build(depth - 1);
        n->b = build(depth - 1);
        break;
      }
      case 5: {
        n->kind = Node::Kind::Pow;
        n->a = build(depth - 1);
        n->exponent = 2.0 + pick(rng) % 3;
        n->exponent_is_int = true;
        break;
      }
      default: {
        n->kind = Node::Kind::Unary;
        const UnaryFn fns[] = {UnaryFn::Sin, UnaryFn::Cos,  UnaryFn::Exp,
                               UnaryFn::Neg, UnaryFn::Sinh, UnaryFn::Tanh};
        n->fn = fns[pick(rng) % 6];
        n->a = build(depth - 1);
        break;
      }
    }
    return n;
  };
  for (int k = 0; k < 60; ++k) {
    ExprAst ast{build(4), {}, ""};
    const std::string printed = to_string(ast);
    const ExprAst reparsed = parse(printed);
    CAPTURE(printed);
    CHECK(same_structure(ast, reparsed));
  }
}

TEST_CASE("jet chain rule: substitution equals composition") {
  // f univariate in x, g bivariate; substituting g for x in f must match
  // composing the jets.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> U(-0.6, 0.6);
  const char* fs[] = {"sin(x)", "exp(x)", "x^3+x", "tanh(x)", "1/(2+x)"};
  const char* gs[] = {"x*y+0.5", "sin(x)+cos(y)", "x^2-y^2", "0.3*x+0.7*y"};
  int done = 0;
  for (const char* fsrc : fs) {
    for (const char* gsrc : gs) {
      const ExprAst f = parse(fsrc), g = parse(gsrc);
      for (int k = 0; k < 3; ++k) {
        const double x0 = U(rng), y0 = U(rng);
        const Jet gj = eval_jet(g, x0, y0, {}, 3);
        // Composition route: feed g's jet in as the x argument of f.
        const Jet comp =
            eval_jet(f, gj, Jet::constant(0.0, 3, x0, y0), {});
        // Substitution route on source text: f with standalone x replaced
        // by (g).
        std::string sub;
        const std::string ftxt(fsrc);
        for (size_t p = 0; p < ftxt.size(); ++p) {
          const bool prev_id = p > 0 && (std::isalnum(ftxt[p - 1]) || ftxt[p - 1] == '_');
          const bool next_id = p + 1 < ftxt.size() &&
                               (std::isalnum(ftxt[p + 1]) || ftxt[p + 1] == '_');
          if (ftxt[p] == 'x' && !prev_id && !next_id)
            sub += "(" + std::string(gsrc) + ")";
          else
            sub += ftxt[p];
        }
        const Jet direct = eval_jet(parse(sub), x0, y0, {}, 3);
        CHECK(comp.max_abs_diff(direct) <= 1e-10 * std::max(1.0, std::abs(direct.value())));
        ++done;
      }
    }
  }
  CHECK(done >= 50);
}

TEST_CASE("eval linearity is exact in coefficient arithmetic") {
  const ExprAst f = parse("sin(x)*y"), g = parse("exp(y)+x^2");
  const double x0 = 0.3, y0 = -0.2;
  const Jet fj = eval_jet(f, x0, y0, {}, 3);
  const Jet gj = eval_jet(g, x0, y0, {}, 3);
  // a*f + b*g assembled as an expression with the same binary tree shape.
  const ExprAst sum = parse("2*(sin(x)*y) + 3*(exp(y)+x^2)");
  const Jet sj = eval_jet(sum, x0, y0, {}, 3);
  CHECK(sj.max_abs_diff(2.0 * fj + 3.0 * gj) == 0.0);
}

TEST_CASE("unbound parameters fail") {
  const ExprAst f = parse("H*x", {"H"});
  CHECK_THROWS_AS(eval_jet(f, 0.0, 0.0, {}, 2), EvalError);
  const double val = 2.5;
  CHECK(eval_jet(f, 3.0, 0.0, std::span<const double>(&val, 1), 2).value() ==
        doctest::Approx(7.5));
}
