// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file expr.hpp
 * @brief Small arithmetic expression language for chart components and pair
 * fields, evaluated over doubles or jets.
 *
 * Grammar (recursive descent; '^' binds tighter than unary minus and
 * associates to the right, so -x^2 = -(x^2) and 2^3^2 = 2^(3^2)):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := atom ('^' unary)?
 *   atom    := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
 *
 * IDENT followed by '(' must be one of sin, cos, sinh, cosh, exp, log, sqrt;
 * otherwise it is a variable: u, v, or a named parameter supplied at
 * evaluation time. Errors (parse and evaluation) carry "line:col" positions.
 */

#include <map>
#include <memory>
#include <string>

#include "lcsurf/error.hpp"
#include "lcsurf/jet.hpp"

namespace lcs {

class Expr {
 public:
  Expr() = default;

  /// Parse source text; throws Error with a "line:col" prefix on bad input.
  static Expr parse(const std::string& src);

  bool empty() const { return root_ == nullptr; }
  const std::string& source() const { return src_; }

  /// Evaluate over doubles. `env` supplies u, v and all parameters by name.
  double eval(const std::map<std::string, double>& env) const;

  /// Evaluate over jets. `u` and `v` are the coordinate jets (callers seed
  /// them, including substituted orientations); parameters become constants.
  Jet2 eval_jet(const Jet2& u, const Jet2& v,
                const std::map<std::string, double>& params) const;

  struct Node;  // opaque AST node

 private:
  std::shared_ptr<const Node> root_;
  std::string src_;
};

}  // namespace lcs
