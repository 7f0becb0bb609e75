#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "dgeo/errors.hpp"
#include "dgeo/expression.hpp"
#include "doctest.h"

using namespace dgeo;

namespace {

double eval_str(const std::string& src, const Vec& x) {
  return evaluate(parse_expression(src, static_cast<int>(x.size())), x);
}

Vec point(std::initializer_list<double> vals) {
  Vec v(static_cast<int>(vals.size()));
  int i = 0;
  for (double d : vals) v[i++] = d;
  return v;
}

// random tree generator for the round-trip property
Expression::Ptr random_expr(std::mt19937_64& rng, int depth, int dim) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 5);
  std::uniform_real_distribution<double> lit(-10.0, 10.0);
  switch (pick(rng)) {
    case 0:
      return Expression::make_number(lit(rng));
    case 1:
      return Expression::make_coord(
          static_cast<int>(rng() % static_cast<std::uint64_t>(dim)));
    case 2:
      return Expression::make_pi();
    case 3:
      return Expression::make_neg(random_expr(rng, depth - 1, dim));
    case 4: {
      const char ops[] = {'+', '-', '*', '/', '^'};
      return Expression::make_binary(ops[rng() % 5],
                                     random_expr(rng, depth - 1, dim),
                                     random_expr(rng, depth - 1, dim));
    }
    default: {
      const Expression::Func fs[] = {
          Expression::Func::Sin,  Expression::Func::Cos,
          Expression::Func::Tan,  Expression::Func::Sinh,
          Expression::Func::Cosh, Expression::Func::Tanh,
          Expression::Func::Exp,  Expression::Func::Log,
          Expression::Func::Sqrt, Expression::Func::Abs};
      return Expression::make_call(fs[rng() % 10],
                                   random_expr(rng, depth - 1, dim));
    }
  }
}

}  // namespace

TEST_CASE("precedence and arithmetic") {
  CHECK(eval_str("2+3*4", point({0.0})) == 14.0);
  CHECK(eval_str("sin(x0)^2", point({M_PI / 2})) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eval_str("1/(x1*x1)", point({0.0, 2.0})) == 0.25);
  CHECK(eval_str("cos(pi)", point({0.0})) == doctest::Approx(-1.0));
  CHECK(eval_str("2^3^2", point({0.0})) == 512.0);  // right-associative
  CHECK(eval_str("7-4-2", point({0.0})) == 1.0);    // left-associative
  CHECK(eval_str("-2^2", point({0.0})) == -4.0);  // ^ binds tighter than unary -
  CHECK(eval_str("(-2)^2", point({0.0})) == 4.0);
  CHECK(eval_str("2^-3", point({0.0})) == 0.125);
  CHECK(eval_str("6/3/2", point({0.0})) == 1.0);
  CHECK(eval_str("1.5e2 + .5", point({0.0})) == 150.5);
}

TEST_CASE("parse errors carry positions and expectations") {
  CHECK_THROWS_AS(parse_expression("2 + * 3", 1), ParseError);
  try {
    parse_expression("2 + * 3", 1);
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(e.expected().find("number") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expression("foo(x0)", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("x5 + 1", 2), ParseError);  // out of range
  CHECK_THROWS_AS(parse_expression("sin x0", 1), ParseError);  // arity
  CHECK_THROWS_AS(parse_expression("sin()", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("(1+2", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("1 2", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("1e999", 1), ParseError);  // overflow
}

TEST_CASE("evaluation reports domain errors") {
  CHECK_THROWS_AS(eval_str("log(0-1)", point({0.0})), DomainError);
  CHECK_THROWS_AS(eval_str("sqrt(0-x0)", point({4.0})), DomainError);
  CHECK_THROWS_AS(eval_str("1/(x0-x0)", point({1.0})), DomainError);
  CHECK_THROWS_AS(eval_str("exp(x0)^9", point({500.0})), DomainError);
}

TEST_CASE("printing keeps the tree: fixed cases") {
  const char* sources[] = {
      "2+3*4",    "-x0^2",     "(-x0)^2",     "x0-(x1-x0)", "sin(x0)^2",
      "2^3^2",    "(2^3)^2",   "1/(x1*x1)",   "-(x0+x1)",   "--x0",
      "x0/x1*x0", "abs(0-x0)", "tanh(x0*pi)", "1.5e-3*x0",
  };
  for (const char* src : sources) {
    auto tree = parse_expression(src, 2);
    auto back = parse_expression(to_string(tree), 2);
    CAPTURE(src);
    CAPTURE(to_string(tree));
    CHECK(equal(tree, back));
  }
}

TEST_CASE("printing keeps the tree: 1000 random expressions") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 1000; ++i) {
    auto tree = random_expr(rng, 5, 3);
    const std::string text = to_string(tree);
    CAPTURE(text);
    Expression::Ptr back;
    REQUIRE_NOTHROW(back = parse_expression(text, 3));
    REQUIRE(equal(tree, back));
  }
}

TEST_CASE("number literals round-trip through printing") {
  for (double v : {0.1, 1.0 / 3.0, 6.02e23, 5e-324, 1.7976931348623157e308}) {
    auto tree = Expression::make_number(v);
    auto back = parse_expression(to_string(tree), 1);
    CHECK(back->kind == Expression::Kind::Number);
    CHECK(back->number == v);
  }
}
