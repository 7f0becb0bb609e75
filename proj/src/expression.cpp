#include "dgeo/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "dgeo/errors.hpp"

namespace dgeo {

namespace {

struct FuncEntry {
  const char* name;
  Expression::Func func;
  double (*fn)(double);
};

constexpr std::array<FuncEntry, 10> kFuncs = {{
    {"sin", Expression::Func::Sin, std::sin},
    {"cos", Expression::Func::Cos, std::cos},
    {"tan", Expression::Func::Tan, std::tan},
    {"sinh", Expression::Func::Sinh, std::sinh},
    {"cosh", Expression::Func::Cosh, std::cosh},
    {"tanh", Expression::Func::Tanh, std::tanh},
    {"exp", Expression::Func::Exp, std::exp},
    {"log", Expression::Func::Log, std::log},
    {"sqrt", Expression::Func::Sqrt, std::sqrt},
    {"abs", Expression::Func::Abs, std::fabs},
}};

const FuncEntry& entry(Expression::Func f) {
  for (const FuncEntry& e : kFuncs)
    if (e.func == f) return e;
  return kFuncs[0];  // unreachable
}

class Parser {
 public:
  Parser(std::string_view src, int dim) : src_(src), dim_(dim) {}

  Expression::Ptr parse() {
    Expression::Ptr e = sum();
    skip_ws();
    if (pos_ != src_.size())
      fail("unexpected trailing input", "end of input or operator");
    return e;
  }

 private:
  // sum    := term (('+'|'-') term)*
  // term   := factor (('*'|'/') factor)*
  // factor := '-' factor | power
  // power  := atom ('^' factor)?          (right-associative)
  // atom   := number | 'pi' | coordinate | func '(' sum ')' | '(' sum ')'
  Expression::Ptr sum() {
    Expression::Ptr lhs = term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        lhs = Expression::make_binary('+', lhs, term());
      else if (accept('-'))
        lhs = Expression::make_binary('-', lhs, term());
      else
        return lhs;
    }
  }

  Expression::Ptr term() {
    Expression::Ptr lhs = factor();
    for (;;) {
      skip_ws();
      if (accept('*'))
        lhs = Expression::make_binary('*', lhs, factor());
      else if (accept('/'))
        lhs = Expression::make_binary('/', lhs, factor());
      else
        return lhs;
    }
  }

  Expression::Ptr factor() {
    skip_ws();
    if (accept('-')) return Expression::make_neg(factor());
    return power();
  }

  Expression::Ptr power() {
    Expression::Ptr base = atom();
    skip_ws();
    if (accept('^')) return Expression::make_binary('^', base, factor());
    return base;
  }

  Expression::Ptr atom() {
    skip_ws();
    if (pos_ >= src_.size())
      fail("unexpected end of input", "number, identifier or '('");
    const char c = src_[pos_];
    if (accept('(')) {
      Expression::Ptr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    fail("unexpected character", "number, identifier or '('");
    return nullptr;  // unreachable
  }

  Expression::Ptr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // bare 'e' starts an identifier, not an exponent
      }
    }
    double v = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || !std::isfinite(v)) {
      pos_ = start;
      fail("number literal out of range", "finite real literal");
    }
    return Expression::make_number(v);
  }

  Expression::Ptr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "pi") return Expression::make_pi();
    for (const FuncEntry& e : kFuncs) {
      if (name == e.name) {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != '(') {
          pos_ = start;
          fail("function call requires an argument list", "'(' after function name");
        }
        ++pos_;
        Expression::Ptr arg = sum();
        expect(')');
        return Expression::make_call(e.func, arg);
      }
    }
    if (name.size() >= 2 && name[0] == 'x') {
      int idx = -1;
      auto [p, ec] =
          std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (ec == std::errc{} && p == name.data() + name.size()) {
        if (idx < 0 || idx >= dim_) {
          pos_ = start;
          fail("coordinate index out of range for this chart",
               "x0..x" + std::to_string(dim_ - 1));
        }
        return Expression::make_coord(idx);
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'",
         "coordinate, function name or pi");
    return nullptr;  // unreachable
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail("missing token", std::string("'") + c + "'");
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
    throw ParseError(msg + " at byte " + std::to_string(pos_) + " (expected " +
                         expected + ")",
                     pos_, expected);
  }

  std::string_view src_;
  int dim_;
  std::size_t pos_ = 0;
};

int precedence(const Expression& e) {
  switch (e.kind) {
    case Expression::Kind::Binary:
      if (e.op == '+' || e.op == '-') return 1;
      if (e.op == '*' || e.op == '/') return 2;
      return 4;  // ^
    case Expression::Kind::Unary:
      return 3;
    default:
      return 5;
  }
}

void print(const Expression& e, std::string& out, int min_prec) {
  const int prec = precedence(e);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case Expression::Kind::Number: {
      char buf[64];
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), e.number);
      out.append(buf, p);
      break;
    }
    case Expression::Kind::Coord:
      out += 'x';
      out += std::to_string(e.coord);
      break;
    case Expression::Kind::Pi:
      out += "pi";
      break;
    case Expression::Kind::Unary:
      out += '-';
      print(*e.a, out, 3);
      break;
    case Expression::Kind::Binary: {
      // Left-associative ops force parentheses on same-precedence right
      // children; '^' is right-associative and its exponent may be signed.
      const int lp = (e.op == '^') ? 5 : prec;
      const int rp = (e.op == '^') ? 3 : prec + 1;
      print(*e.a, out, lp);
      out += e.op;
      print(*e.b, out, rp);
      break;
    }
    case Expression::Kind::Call:
      out += entry(e.func).name;
      out += '(';
      print(*e.a, out, 0);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

double checked(double v, const char* what) {
  if (!std::isfinite(v))
    throw DomainError(std::string("non-finite value from ") + what);
  return v;
}

}  // namespace

Expression::Ptr Expression::make_number(double v) {
  auto e = std::make_shared<Expression>();
  e->kind = Kind::Number;
  e->number = v;
  return e;
}

Expression::Ptr Expression::make_coord(int index) {
  auto e = std::make_shared<Expression>();
  e->kind = Kind::Coord;
  e->coord = index;
  return e;
}

Expression::Ptr Expression::make_pi() {
  auto e = std::make_shared<Expression>();
  e->kind = Kind::Pi;
  return e;
}

Expression::Ptr Expression::make_neg(Ptr inner) {
  auto e = std::make_shared<Expression>();
  e->kind = Kind::Unary;
  e->a = std::move(inner);
  return e;
}

Expression::Ptr Expression::make_binary(char op, Ptr lhs, Ptr rhs) {
  auto e = std::make_shared<Expression>();
  e->kind = Kind::Binary;
  e->op = op;
  e->a = std::move(lhs);
  e->b = std::move(rhs);
  return e;
}

Expression::Ptr Expression::make_call(Func f, Ptr arg) {
  auto e = std::make_shared<Expression>();
  e->kind = Kind::Call;
  e->func = f;
  e->a = std::move(arg);
  return e;
}

Expression::Ptr parse_expression(std::string_view source, int dimension) {
  return Parser(source, dimension).parse();
}

double evaluate(const Expression& e, const Vec& point) {
  switch (e.kind) {
    case Expression::Kind::Number:
      return e.number;
    case Expression::Kind::Coord:
      return point[e.coord];
    case Expression::Kind::Pi:
      return M_PI;
    case Expression::Kind::Unary:
      return -evaluate(*e.a, point);
    case Expression::Kind::Binary: {
      const double a = evaluate(*e.a, point);
      const double b = evaluate(*e.b, point);
      switch (e.op) {
        case '+':
          return checked(a + b, "addition");
        case '-':
          return checked(a - b, "subtraction");
        case '*':
          return checked(a * b, "multiplication");
        case '/':
          return checked(a / b, "division");
        default:
          return checked(std::pow(a, b), "power");
      }
    }
    case Expression::Kind::Call:
      return checked(entry(e.func).fn(evaluate(*e.a, point)),
                     entry(e.func).name);
  }
  throw NumericError("corrupt expression node");
}

std::string to_string(const Expression& e) {
  std::string out;
  print(e, out, 0);
  return out;
}

bool equal(const Expression& x, const Expression& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expression::Kind::Number: {
      // bit-exact comparison, including the sign of zero
      return x.number == y.number &&
             std::signbit(x.number) == std::signbit(y.number);
    }
    case Expression::Kind::Coord:
      return x.coord == y.coord;
    case Expression::Kind::Pi:
      return true;
    case Expression::Kind::Unary:
      return equal(*x.a, *y.a);
    case Expression::Kind::Binary:
      return x.op == y.op && equal(*x.a, *y.a) && equal(*x.b, *y.b);
    case Expression::Kind::Call:
      return x.func == y.func && equal(*x.a, *y.a);
  }
  return false;
}

const char* func_name(Expression::Func f) { return entry(f).name; }

}  // namespace dgeo
