#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "dgeo/tensor.hpp"

namespace dgeo {

/// Arithmetic expressions over chart coordinates x0..x{n-1}.
///
/// Grammar: real literals, coordinate symbols, the constant pi, operators
/// + - * / ^ (with ^ binding tighter than unary minus and right-associative),
/// unary minus, parentheses, and the one-argument functions
/// sin cos tan sinh cosh tanh exp log sqrt abs.
class Expression {
 public:
  enum class Kind { Number, Coord, Pi, Unary, Binary, Call };
  enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };

  using Ptr = std::shared_ptr<const Expression>;

  Kind kind;
  double number = 0.0;           // Kind::Number
  int coord = -1;                // Kind::Coord
  char op = 0;                   // Kind::Binary: one of + - * / ^
  Func func = Func::Sin;         // Kind::Call
  Ptr a, b;                      // operands

  static Ptr make_number(double v);
  static Ptr make_coord(int index);
  static Ptr make_pi();
  static Ptr make_neg(Ptr e);
  static Ptr make_binary(char op, Ptr lhs, Ptr rhs);
  static Ptr make_call(Func f, Ptr arg);
};

/// Parses `source` against an n-coordinate chart; throws ParseError (with
/// byte offset and expected-token description) on malformed input.
Expression::Ptr parse_expression(std::string_view source, int dimension);

/// Evaluates at a point; throws DomainError when any intermediate value is
/// non-finite (log of a non-positive number, division by zero, ...).
double evaluate(const Expression& e, const Vec& point);
inline double evaluate(const Expression::Ptr& e, const Vec& point) {
  return evaluate(*e, point);
}

/// Minimal-parenthesis rendering; parsing the result reproduces the tree.
std::string to_string(const Expression& e);
inline std::string to_string(const Expression::Ptr& e) { return to_string(*e); }

/// Structural equality, with bit-exact literal comparison.
bool equal(const Expression& x, const Expression& y);
inline bool equal(const Expression::Ptr& x, const Expression::Ptr& y) {
  return equal(*x, *y);
}

const char* func_name(Expression::Func f);

}  // namespace dgeo
