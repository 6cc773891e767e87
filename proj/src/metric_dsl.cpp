#include "spinor_forge/metric_dsl.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace spinor_forge::dsl {

ParseError::ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message)
    : std::runtime_error(message + " at offset " + std::to_string(offset)),
      kind_(kind),
      offset_(offset) {}

Expr number(double v) { return std::make_shared<const Node>(Node{Op::Number, v, 0, {}, {}}); }

Expr coord(int index) {
  if (index < 0 || index > 3) throw std::out_of_range("coordinate index out of range");
  return std::make_shared<const Node>(Node{Op::Coord, 0.0, index, {}, {}});
}

Expr unary(Op op, Expr operand) {
  return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(operand), {}});
}

Expr binary(Op op, Expr lhs, Expr rhs) {
  return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(lhs), std::move(rhs)});
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct FunctionName {
  const char* name;
  Op op;
};
constexpr FunctionName kFunctions[] = {
    {"sin", Op::Sin}, {"cos", Op::Cos}, {"sqrt", Op::Sqrt}, {"exp", Op::Exp}, {"ln", Op::Ln}};

class Parser {
 public:
  Parser(std::string_view src, const Coordinates& coords) : src_(src), coords_(coords) {}

  Expr run() {
    Expr e = additive();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view src_;
  const Coordinates& coords_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, ParseErrorKind kind = ParseErrorKind::Syntax) {
    throw ParseError(kind, pos_, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, multiplicative());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  Expr multiplicative() {
    Expr lhs = prefix();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::Mul, lhs, prefix());
      } else if (accept('/')) {
        lhs = binary(Op::Div, lhs, prefix());
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than ^, so -r^2 is -(r^2).
  Expr prefix() {
    if (accept('-')) return unary(Op::Neg, prefix());
    if (accept('+')) return prefix();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return binary(Op::Pow, base, prefix());
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = additive();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
    if (is_ident_start(c)) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr literal() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return number(v);
  }

  int coordinate_index(std::string_view name) const {
    static constexpr const char* kDefault[4][2] = {{"x0", "t"}, {"x1", "r"}, {"x2", "th"}, {"x3", "ph"}};
    for (int k = 0; k < 4; ++k) {
      if (!coords_.names[k].empty() && name == coords_.names[k]) return k;
    }
    for (int k = 0; k < 4; ++k) {
      if (name == kDefault[k][0] || name == kDefault[k][1]) return k;
    }
    return -1;
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    for (const auto& f : kFunctions) {
      if (name != f.name) continue;
      if (!accept('(')) fail("function '" + std::string(name) + "' needs an argument list", ParseErrorKind::Arity);
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == ')') {
        fail("function '" + std::string(name) + "' takes 1 argument, got 0", ParseErrorKind::Arity);
      }
      Expr arg = additive();
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        fail("function '" + std::string(name) + "' takes 1 argument", ParseErrorKind::Arity);
      }
      if (!accept(')')) fail("expected ')'");
      return unary(f.op, arg);
    }
    const int k = coordinate_index(name);
    if (k < 0) {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'", ParseErrorKind::UnknownIdentifier);
    }
    return coord(k);
  }
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

bool integral(double y) { return std::trunc(y) == y && std::abs(y) < 1e6; }

double int_pow(double x, long n) {
  const bool invert = n < 0;
  unsigned long k = static_cast<unsigned long>(invert ? -n : n);
  double result = 1.0;
  double base = x;
  while (k != 0) {
    if (k & 1u) result *= base;
    base *= base;
    k >>= 1;
  }
  if (invert) {
    if (result == 0.0) throw DomainError("zero raised to a negative power");
    result = 1.0 / result;
  }
  return result;
}

}  // namespace

Expr parse(std::string_view source, const Coordinates& coords) {
  return Parser(source, coords).run();
}

double eval(const Expr& e, const Point4& x) {
  switch (e->op) {
    case Op::Number:
      return e->value;
    case Op::Coord:
      return x[e->coord];
    case Op::Neg:
      return -eval(e->lhs, x);
    case Op::Add:
      return checked(eval(e->lhs, x) + eval(e->rhs, x), "addition");
    case Op::Sub:
      return checked(eval(e->lhs, x) - eval(e->rhs, x), "subtraction");
    case Op::Mul:
      return checked(eval(e->lhs, x) * eval(e->rhs, x), "multiplication");
    case Op::Div: {
      const double d = eval(e->rhs, x);
      if (d == 0.0) throw DomainError("division by zero");
      return checked(eval(e->lhs, x) / d, "division");
    }
    case Op::Pow: {
      const double b = eval(e->lhs, x);
      const double y = eval(e->rhs, x);
      if (integral(y)) return checked(int_pow(b, static_cast<long>(y)), "power");
      if (b <= 0.0) throw DomainError("non-integer power of a non-positive base");
      return checked(std::exp(y * std::log(b)), "power");
    }
    case Op::Sin:
      return std::sin(eval(e->lhs, x));
    case Op::Cos:
      return std::cos(eval(e->lhs, x));
    case Op::Sqrt: {
      const double a = eval(e->lhs, x);
      if (a < 0.0) throw DomainError("sqrt of a negative number");
      return std::sqrt(a);
    }
    case Op::Exp:
      return checked(std::exp(eval(e->lhs, x)), "exp");
    case Op::Ln: {
      const double a = eval(e->lhs, x);
      if (a <= 0.0) throw DomainError("ln of a non-positive number");
      return std::log(a);
    }
  }
  throw std::logic_error("unreachable");
}

namespace {
const char* function_name(Op op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name;
  }
  return nullptr;
}

std::string format_literal(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}
}  // namespace

std::string print(const Expr& e) {
  switch (e->op) {
    case Op::Number:
      return format_literal(e->value);
    case Op::Coord:
      return "x" + std::to_string(e->coord);
    case Op::Neg:
      return "(-" + print(e->lhs) + ")";
    case Op::Add:
      return "(" + print(e->lhs) + " + " + print(e->rhs) + ")";
    case Op::Sub:
      return "(" + print(e->lhs) + " - " + print(e->rhs) + ")";
    case Op::Mul:
      return "(" + print(e->lhs) + " * " + print(e->rhs) + ")";
    case Op::Div:
      return "(" + print(e->lhs) + " / " + print(e->rhs) + ")";
    case Op::Pow:
      return "(" + print(e->lhs) + " ^ " + print(e->rhs) + ")";
    default:
      return std::string(function_name(e->op)) + "(" + print(e->lhs) + ")";
  }
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  if (a->op == Op::Number) return a->value == b->value;
  if (a->op == Op::Coord) return a->coord == b->coord;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

}  // namespace spinor_forge::dsl
