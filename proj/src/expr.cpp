#include "ccbs/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace ccbs {

ExprPtr Expr::make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Number;
  e->number = v;
  return e;
}
ExprPtr Expr::make_coord(int i) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Coord;
  e->coord = i;
  return e;
}
ExprPtr Expr::make_param(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Param;
  e->param = std::move(name);
  return e;
}
ExprPtr Expr::make_unary(Kind k, ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(x);
  return e;
}
ExprPtr Expr::make_binary(Kind k, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(l);
  e->b = std::move(r);
  return e;
}
ExprPtr Expr::make_call(Func f, ExprPtr x, ExprPtr y) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Call;
  e->func = f;
  e->a = std::move(x);
  e->b = std::move(y);
  return e;
}

namespace {

const std::pair<const char*, Func> kFuncs[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
    {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
    {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
    {"atan", Func::Atan},
};

bool lookup_func(const std::string& name, Func& out) {
  for (const auto& [n, f] : kFuncs) {
    if (name == n) {
      out = f;
      return true;
    }
  }
  return false;
}

const char* func_name(Func f) {
  for (const auto& [n, ff] : kFuncs) {
    if (ff == f) return n;
  }
  return "pow";
}

class Parser {
 public:
  Parser(const std::string& src, const ExprScope& scope)
      : src_(src), scope_(scope) {}

  ExprPtr run() {
    skip_ws();
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw parse_error("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+'))
        e = Expr::make_binary(Expr::Kind::Add, e, term());
      else if (eat('-'))
        e = Expr::make_binary(Expr::Kind::Sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (eat('*'))
        e = Expr::make_binary(Expr::Kind::Mul, e, unary());
      else if (eat('/'))
        e = Expr::make_binary(Expr::Kind::Div, e, unary());
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return Expr::make_unary(Expr::Kind::Neg, unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (eat('^')) return Expr::make_call(Func::Pow, base, unary());
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw parse_error("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) throw parse_error("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  ExprPtr number() {
    std::size_t start = pos_;
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw parse_error("malformed number", start);
    pos_ += static_cast<std::size_t>(end - begin);
    return Expr::make_number(v);
  }

  ExprPtr ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    Func f;
    if (lookup_func(name, f)) {
      if (!eat('(')) throw parse_error("function '" + name + "' needs an argument", pos_);
      ExprPtr arg = expr();
      if (!eat(')')) throw parse_error("expected ')'", pos_);
      return Expr::make_call(f, arg);
    }
    for (std::size_t i = 0; i < scope_.coords.size(); ++i) {
      if (scope_.coords[i] == name) return Expr::make_coord(static_cast<int>(i));
    }
    if (scope_.params.count(name)) return Expr::make_param(name);
    throw parse_error("unknown identifier '" + name + "'", start);
  }

  const std::string& src_;
  const ExprScope& scope_;
  std::size_t pos_ = 0;
};

int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Call: return e->func == Func::Pow ? 4 : 5;
    default: return 5;
  }
}

void print_rec(std::ostringstream& os, const ExprPtr& e, const ExprScope& scope,
               int parent_prec, bool right_side) {
  int prec = precedence(e);
  bool parens = prec < parent_prec || (prec == parent_prec && right_side);
  if (parens) os << "(";
  switch (e->kind) {
    case Expr::Kind::Number: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << e->number;
      os << tmp.str();
      break;
    }
    case Expr::Kind::Coord: os << scope.coords[e->coord]; break;
    case Expr::Kind::Param: os << e->param; break;
    case Expr::Kind::Neg:
      os << "-";
      print_rec(os, e->a, scope, 3, true);
      break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      print_rec(os, e->a, scope, 1, false);
      os << (e->kind == Expr::Kind::Add ? " + " : " - ");
      print_rec(os, e->b, scope, 1, true);
      break;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      print_rec(os, e->a, scope, 2, false);
      os << (e->kind == Expr::Kind::Mul ? "*" : "/");
      print_rec(os, e->b, scope, 2, true);
      break;
    case Expr::Kind::Call:
      if (e->func == Func::Pow) {
        print_rec(os, e->a, scope, 5, false);
        os << "^";
        print_rec(os, e->b, scope, 4, true);
      } else {
        os << func_name(e->func) << "(";
        print_rec(os, e->a, scope, 0, false);
        os << ")";
      }
      break;
  }
  if (parens) os << ")";
}

}  // namespace

ExprPtr parse_expr(const std::string& source, const ExprScope& scope) {
  return Parser(source, scope).run();
}

std::string print_expr(const ExprPtr& e, const ExprScope& scope) {
  std::ostringstream os;
  print_rec(os, e, scope, 0, false);
  return os.str();
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Number: return a->number == b->number;
    case Expr::Kind::Coord: return a->coord == b->coord;
    case Expr::Kind::Param: return a->param == b->param;
    case Expr::Kind::Call:
      if (a->func != b->func) return false;
      [[fallthrough]];
    default:
      return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

const char* expr_grammar() {
  return "expr := term ((\"+\"|\"-\") term)*; "
         "term := unary ((\"*\"|\"/\") unary)*; "
         "unary := \"-\" unary | power; "
         "power := atom (\"^\" unary)?; "
         "atom := NUMBER | IDENT | IDENT \"(\" expr \")\" | \"(\" expr \")\". "
         "IDENT is coordinate name, parameter, or function tag. "
         "NUMBER is a decimal literal with optional exponent.";
}

namespace {
Jet eval_rec(const ExprPtr& e, const ExprScope& scope,
             std::span<const double> point, const LayoutPtr& lay);
}

Jet eval_expr(const ExprPtr& e, const ExprScope& scope,
              std::span<const double> point, const LayoutPtr& lay) {
  try {
    return eval_rec(e, scope, point, lay);
  } catch (const jet_error& err) {
    throw eval_error(err.what());
  }
}

namespace {
Jet eval_rec(const ExprPtr& e, const ExprScope& scope,
             std::span<const double> point, const LayoutPtr& lay) {
  switch (e->kind) {
    case Expr::Kind::Number: return Jet::constant(lay, e->number);
    case Expr::Kind::Coord: return Jet::seed(lay, e->coord, point[e->coord]);
    case Expr::Kind::Param: return Jet::constant(lay, scope.params.at(e->param));
    case Expr::Kind::Neg: return -eval_rec(e->a, scope, point, lay);
    case Expr::Kind::Add:
      return eval_rec(e->a, scope, point, lay) + eval_rec(e->b, scope, point, lay);
    case Expr::Kind::Sub:
      return eval_rec(e->a, scope, point, lay) - eval_rec(e->b, scope, point, lay);
    case Expr::Kind::Mul:
      return eval_rec(e->a, scope, point, lay) * eval_rec(e->b, scope, point, lay);
    case Expr::Kind::Div:
      return eval_rec(e->a, scope, point, lay) / eval_rec(e->b, scope, point, lay);
    case Expr::Kind::Call: {
      Jet x = eval_rec(e->a, scope, point, lay);
      switch (e->func) {
        case Func::Sin: return sin(x);
        case Func::Cos: return cos(x);
        case Func::Tan: return tan(x);
        case Func::Exp: return exp(x);
        case Func::Log: return log(x);
        case Func::Sqrt: return sqrt(x);
        case Func::Sinh: return sinh(x);
        case Func::Cosh: return cosh(x);
        case Func::Tanh: return tanh(x);
        case Func::Atan: return atan(x);
        case Func::Pow: {
          Jet p = eval_rec(e->b, scope, point, lay);
          // Constant exponents keep integer-power semantics; jet exponents
          // go through exp/log and need a positive base.
          bool const_exp = true;
          for (int f = 1; f < p.layout()->degree_offset(p.valid() + 1); ++f) {
            if (p.raw()[f] != 0.0) { const_exp = false; break; }
          }
          if (const_exp) return pow(x, p.value());
          return exp(p * log(x));
        }
      }
      break;
    }
  }
  throw eval_error("malformed expression tree");
}
}  // namespace

double eval_expr_value(const ExprPtr& e, const ExprScope& scope,
                       std::span<const double> point) {
  auto lay = JetLayout::get(static_cast<int>(point.size()), 0);
  return eval_expr(e, scope, point, lay).value();
}

}  // namespace ccbs
