#include "cmc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace cmc::expr {

namespace {

const std::map<std::string, UnaryFn>& function_table() {
  static const std::map<std::string, UnaryFn> t = {
      {"sin", UnaryFn::Sin},   {"cos", UnaryFn::Cos},   {"tan", UnaryFn::Tan},
      {"sinh", UnaryFn::Sinh}, {"cosh", UnaryFn::Cosh}, {"tanh", UnaryFn::Tanh},
      {"exp", UnaryFn::Exp},   {"log", UnaryFn::Log},   {"sqrt", UnaryFn::Sqrt},
      {"atan", UnaryFn::Atan}};
  return t;
}

const char* fn_name(UnaryFn f) {
  switch (f) {
    case UnaryFn::Sin: return "sin";
    case UnaryFn::Cos: return "cos";
    case UnaryFn::Tan: return "tan";
    case UnaryFn::Sinh: return "sinh";
    case UnaryFn::Cosh: return "cosh";
    case UnaryFn::Tanh: return "tanh";
    case UnaryFn::Exp: return "exp";
    case UnaryFn::Log: return "log";
    case UnaryFn::Sqrt: return "sqrt";
    case UnaryFn::Atan: return "atan";
    case UnaryFn::Neg: return "-";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& src, const std::vector<std::string>& params)
      : src_(src), params_(params) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "' " + what, pos_);
  }

  // expression := term (('+'|'-') term)*
  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('+')) e = binary(BinOp::Add, e, term(), at);
      else if (accept('-')) e = binary(BinOp::Sub, e, term(), at);
      else return e;
    }
  }

  // term := factor (('*'|'/') factor)*
  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) e = binary(BinOp::Mul, e, factor(), at);
      else if (accept('/')) e = binary(BinOp::Div, e, factor(), at);
      else return e;
    }
  }

  // factor := '-' factor | primary ('^' exponent)?
  NodePtr factor() {
    skip_ws();
    std::size_t at = pos_;
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Unary;
      n->fn = UnaryFn::Neg;
      n->offset = at;
      n->a = factor();
      return n;
    }
    NodePtr base = primary();
    skip_ws();
    if (accept('^')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Pow;
      n->offset = at;
      n->a = base;
      n->exponent = exponent_value();
      double ip;
      n->exponent_is_int = std::modf(n->exponent, &ip) == 0.0 &&
                           std::abs(n->exponent) <= 1e15;
      return n;
    }
    return base;
  }

  // exponent := ['-'] number ['^' exponent]   (constants only, right-assoc)
  double exponent_value() {
    skip_ws();
    bool paren = accept('(');
    skip_ws();
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    skip_ws();
    std::size_t at = pos_;
    double v = sign * number_literal();
    skip_ws();
    if (accept('^')) v = std::pow(v, exponent_value());
    if (paren) expect(')', "closing exponent");
    (void)at;
    return v;
  }

  double number_literal() {
    skip_ws();
    if (pos_ >= src_.size() ||
        !(std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      throw ParseError("expected a numeric constant", pos_);
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    pos_ += end - begin;
    return v;
  }

  // primary := number | identifier | identifier '(' expression ')' |
  //            '(' expression ')'
  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    std::size_t at = pos_;
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      expect(')', "to close '('");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Number;
      n->offset = at;
      n->number = number_literal();
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        id += src_[pos_++];
      auto fn = function_table().find(id);
      if (fn != function_table().end()) {
        if (!peek('('))
          throw ParseError("function '" + id + "' takes one parenthesized argument", pos_);
        ++pos_;
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Unary;
        n->fn = fn->second;
        n->offset = at;
        n->a = expression();
        if (accept(',')) throw ParseError("function '" + id + "' takes exactly one argument", pos_ - 1);
        expect(')', "to close function argument");
        return n;
      }
      if (peek('('))
        throw ParseError("unknown function '" + id + "'", at);
      if (id == "x" || id == "y") {
        auto n = std::make_shared<Node>();
        n->kind = id == "x" ? Node::Kind::VarX : Node::Kind::VarY;
        n->offset = at;
        return n;
      }
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (params_[i] == id) {
          auto n = std::make_shared<Node>();
          n->kind = Node::Kind::Param;
          n->name = id;
          n->param_index = static_cast<int>(i);
          n->offset = at;
          return n;
        }
      }
      throw ParseError("unknown identifier '" + id + "'", at);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  static NodePtr binary(BinOp op, NodePtr a, NodePtr b, std::size_t at) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->offset = at;
    return n;
  }

  const std::string& src_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Binary:
      return (n.op == BinOp::Add || n.op == BinOp::Sub) ? 1 : 2;
    case Node::Kind::Unary:
      return n.fn == UnaryFn::Neg ? 3 : 5;
    case Node::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string number_to_string(double v) {
  // Shortest representation that round-trips.
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void print_node(const Node& n, std::string& out) {
  auto child = [&out](const Node& parent, const Node& c, bool needs_if_equal) {
    bool paren = precedence(c) < precedence(parent) ||
                 (needs_if_equal && precedence(c) == precedence(parent));
    if (paren) out += '(';
    print_node(c, out);
    if (paren) out += ')';
  };
  switch (n.kind) {
    case Node::Kind::Number:
      out += number_to_string(n.number);
      return;
    case Node::Kind::VarX:
      out += 'x';
      return;
    case Node::Kind::VarY:
      out += 'y';
      return;
    case Node::Kind::Param:
      out += n.name;
      return;
    case Node::Kind::Unary:
      if (n.fn == UnaryFn::Neg) {
        out += '-';
        child(n, *n.a, false);
      } else {
        out += fn_name(n.fn);
        out += '(';
        print_node(*n.a, out);
        out += ')';
      }
      return;
    case Node::Kind::Binary: {
      const char* ops[] = {"+", "-", "*", "/"};
      child(n, *n.a, false);
      out += ops[static_cast<int>(n.op)];
      // Left-associative grammar: a right child at equal precedence always
      // needs parentheses.
      child(n, *n.b, true);
      return;
    }
    case Node::Kind::Pow:
      child(n, *n.a, true);
      out += '^';
      if (n.exponent < 0) {
        out += '(';
        out += number_to_string(n.exponent);
        out += ')';
      } else {
        out += number_to_string(n.exponent);
      }
      return;
  }
}

bool same_node(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::Number: return a.number == b.number;
    case Node::Kind::VarX:
    case Node::Kind::VarY: return true;
    case Node::Kind::Param: return a.name == b.name;
    case Node::Kind::Unary: return a.fn == b.fn && same_node(*a.a, *b.a);
    case Node::Kind::Binary:
      return a.op == b.op && same_node(*a.a, *b.a) && same_node(*a.b, *b.b);
    case Node::Kind::Pow:
      return a.exponent == b.exponent &&
             a.exponent_is_int == b.exponent_is_int && same_node(*a.a, *b.a);
  }
  return false;
}

Jet eval_node(const Node& n, const Jet& x, const Jet& y,
              std::span<const double> pv) {
  switch (n.kind) {
    case Node::Kind::Number:
      return Jet::constant(n.number, x.order(), x.x0(), x.y0());
    case Node::Kind::VarX:
      return x;
    case Node::Kind::VarY:
      return y;
    case Node::Kind::Param:
      if (n.param_index < 0 || n.param_index >= static_cast<int>(pv.size()))
        throw EvalError("parameter '" + n.name + "' is unbound", n.offset);
      return Jet::constant(pv[n.param_index], x.order(), x.x0(), x.y0());
    case Node::Kind::Unary: {
      Jet a = eval_node(*n.a, x, y, pv);
      try {
        switch (n.fn) {
          case UnaryFn::Sin: return sin(a);
          case UnaryFn::Cos: return cos(a);
          case UnaryFn::Tan: return tan(a);
          case UnaryFn::Sinh: return sinh(a);
          case UnaryFn::Cosh: return cosh(a);
          case UnaryFn::Tanh: return tanh(a);
          case UnaryFn::Exp: return exp(a);
          case UnaryFn::Log: return log(a);
          case UnaryFn::Sqrt: return sqrt(a);
          case UnaryFn::Atan: return atan(a);
          case UnaryFn::Neg: return -a;
        }
      } catch (const JetDomainError& e) {
        throw EvalError(std::string(fn_name(n.fn)) + ": " + e.what(), n.offset);
      }
      throw EvalError("unhandled function", n.offset);
    }
    case Node::Kind::Binary: {
      Jet a = eval_node(*n.a, x, y, pv);
      Jet b = eval_node(*n.b, x, y, pv);
      switch (n.op) {
        case BinOp::Add: return a + b;
        case BinOp::Sub: return a - b;
        case BinOp::Mul: return a * b;
        case BinOp::Div:
          if (b.value() == 0.0) throw EvalError("division by zero", n.offset);
          return a / b;
      }
      throw EvalError("unhandled operator", n.offset);
    }
    case Node::Kind::Pow: {
      Jet a = eval_node(*n.a, x, y, pv);
      try {
        if (n.exponent_is_int)
          return pow_int(a, static_cast<long long>(n.exponent));
        return pow_real(a, n.exponent);
      } catch (const JetDomainError& e) {
        throw EvalError(std::string("power: ") + e.what(), n.offset);
      }
    }
  }
  throw EvalError("unhandled node", n.offset);
}

}  // namespace

ExprAst parse(const std::string& source, const std::vector<std::string>& params) {
  Parser p(source, params);
  return ExprAst{p.run(), params, source};
}

std::string to_string(const ExprAst& ast) {
  std::string out;
  print_node(*ast.root, out);
  return out;
}

bool same_structure(const ExprAst& a, const ExprAst& b) {
  return same_node(*a.root, *b.root);
}

Jet eval_jet(const ExprAst& ast, const Jet& x, const Jet& y,
             std::span<const double> param_values) {
  if (param_values.size() != ast.params.size())
    throw EvalError("wrong number of parameter bindings", 0);
  return eval_node(*ast.root, x, y, param_values);
}

Jet eval_jet(const ExprAst& ast, double x0, double y0,
             std::span<const double> param_values, int order) {
  return eval_jet(ast, Jet::var_x(order, x0, y0), Jet::var_y(order, x0, y0),
                  param_values);
}

}  // namespace cmc::expr
