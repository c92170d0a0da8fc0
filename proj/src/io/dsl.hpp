#pragma once

#include "io/format.hpp"

#include <memory>
#include <string>
#include <vector>

namespace relcalc {

struct Expr {
  enum class Kind { Ident, Scalar, Adjoint, Inverse, Scale, Neg, OpSum, OpDiff, CwSum, Product, Call };
  Kind kind;
  int line = 1, col = 1;
  std::string name;  // Ident, Call
  cplx scalar{};     // Scalar
  std::vector<std::unique_ptr<Expr>> args;
};

struct Stmt {
  enum class Kind { Assign, Print, Bare };
  Kind kind;
  std::string target;  // Assign
  std::unique_ptr<Expr> expr;
};

struct Program {
  std::vector<Stmt> stmts;
};

// Throws Error(Parse) with "line L, column C: ..." in the message.
Program parse_program(const std::string& src);
std::string expr_to_string(const Expr& e);

// Checks types against the environment (assignments update it); throws Type / UnknownName.
void typecheck(const Program& p, const Environment& env);

// Runs the program; assignments are stored in env. Returns the printed output.
std::string run_program(Environment& env, const std::string& src);
// Parses, checks and evaluates one expression.
Value evaluate(const Environment& env, const std::string& expr);

// Display of a value in the definitions format with canonical (row echelon) bases.
std::string format_value(const std::string& name, const Value& v);

}  // namespace relcalc
