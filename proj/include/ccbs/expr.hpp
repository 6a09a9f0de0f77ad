#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ccbs/jet.hpp"

namespace ccbs {

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)),
        offset(offset) {}
  std::size_t offset;
};

struct eval_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-form scalar expressions in the chart coordinates. ASTs are immutable
// after parse; evaluation is pure and safe to run concurrently.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Func {
  Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh, Atan, Pow
};

struct Expr {
  enum class Kind { Number, Coord, Param, Neg, Add, Sub, Mul, Div, Call };
  Kind kind;
  double number = 0.0;
  int coord = -1;            // Kind::Coord
  std::string param;         // Kind::Param
  Func func = Func::Sin;     // Kind::Call (Pow has two children)
  ExprPtr a, b;

  static ExprPtr make_number(double v);
  static ExprPtr make_coord(int i);
  static ExprPtr make_param(std::string name);
  static ExprPtr make_unary(Kind k, ExprPtr x);
  static ExprPtr make_binary(Kind k, ExprPtr l, ExprPtr r);
  static ExprPtr make_call(Func f, ExprPtr x, ExprPtr y = nullptr);
};

// Name table the parser resolves identifiers against.
struct ExprScope {
  std::vector<std::string> coords;
  std::map<std::string, double> params;
};

// Recursive-descent parser for
//   expr  := term (("+"|"-") term)*
//   term  := unary (("*"|"/") unary)*
//   unary := "-" unary | power
//   power := atom ("^" unary)?
//   atom  := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
// `^` is right-associative; unary minus binds tighter than `*`.
ExprPtr parse_expr(const std::string& source, const ExprScope& scope);

// Prints so that parse(print(e)) is structurally identical to e.
std::string print_expr(const ExprPtr& e, const ExprScope& scope);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// The grammar text, verbatim, for `print-grammar`.
const char* expr_grammar();

Jet eval_expr(const ExprPtr& e, const ExprScope& scope,
              std::span<const double> point, const LayoutPtr& lay);

double eval_expr_value(const ExprPtr& e, const ExprScope& scope,
                       std::span<const double> point);

}  // namespace ccbs
