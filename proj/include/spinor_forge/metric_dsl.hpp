#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinor_forge::dsl {

enum class ParseErrorKind { Syntax, UnknownIdentifier, Arity };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message);
  ParseErrorKind kind() const { return kind_; }
  /// Byte offset into the source.
  std::size_t offset() const { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Op { Number, Coord, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Sqrt, Exp, Ln };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double value = 0.0;  // Number
  int coord = 0;       // Coord
  Expr lhs;            // unary operand or left operand
  Expr rhs;
};

Expr number(double v);
Expr coord(int index);
Expr unary(Op op, Expr operand);
Expr binary(Op op, Expr lhs, Expr rhs);

/// Coordinate names recognised by the parser, index = position. Defaults
/// always accepted: x0..x3 and t, r, th, ph.
struct Coordinates {
  std::array<std::string, 4> names{};
};

Expr parse(std::string_view source, const Coordinates& coords = {});

using Point4 = std::array<double, 4>;
double eval(const Expr& e, const Point4& x);

/// Fully parenthesized canonical form, reparseable by parse().
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace spinor_forge::dsl
