#pragma once

// Expression language for user-defined immersions F(x,y).  Standard infix
// grammar with function-call syntax; identifiers are x, y or declared
// parameters; evaluation produces jets with exact derivatives.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/jet.hpp"

namespace cmc::expr {

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct EvalError : Error {
  EvalError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

enum class UnaryFn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Atan, Neg };
enum class BinOp { Add, Sub, Mul, Div };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Number, VarX, VarY, Param, Unary, Binary, Pow } kind;
  std::size_t offset = 0;   // byte offset in the source text
  double number = 0.0;      // Number
  std::string name;         // Param
  int param_index = -1;     // Param
  UnaryFn fn = UnaryFn::Neg;
  BinOp op = BinOp::Add;
  NodePtr a, b;
  double exponent = 0.0;    // Pow
  bool exponent_is_int = false;
};

struct ExprAst {
  NodePtr root;
  std::vector<std::string> params;  // declared parameter names, in order
  std::string source;
};

// Parse `source` against the declared parameter names.  Throws ParseError
// (syntax, unknown identifier, arity) with the byte offset of the fault.
ExprAst parse(const std::string& source, const std::vector<std::string>& params = {});

std::string to_string(const ExprAst& ast);

bool same_structure(const ExprAst& a, const ExprAst& b);

// Evaluate with exact derivatives to the order of the supplied jets.
// Throws EvalError naming the offending node for domain failures.
Jet eval_jet(const ExprAst& ast, const Jet& x, const Jet& y,
             std::span<const double> param_values);

Jet eval_jet(const ExprAst& ast, double x0, double y0,
             std::span<const double> param_values, int order);

}  // namespace cmc::expr
