// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include "lcsurf/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace lcs {

struct Expr::Node {
  enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind = Num;
  double num = 0.0;
  std::string name;  // variable name or function name
  int line = 1, col = 1;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Node = Expr::Node;

std::string pos_str(int line, int col) {
  std::ostringstream os;
  os << line << ":" << col;
  return os.str();
}

struct Token {
  enum Kind { Number, Ident, Op, End } kind = End;
  double num = 0.0;
  std::string text;
  char op = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = 0;
      double val = 0.0;
      try {
        val = std::stod(src_.substr(pos_), &end);
      } catch (const std::exception&) {
        fail("parse error at " + pos_str(line_, col_) + ": malformed number");
      }
      tok_.kind = Token::Number;
      tok_.num = val;
      tok_.text = src_.substr(pos_, end);
      consume(end);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      tok_.kind = Token::Ident;
      tok_.text = src_.substr(pos_, end - pos_);
      consume(end - pos_);
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      tok_.kind = Token::Op;
      tok_.op = c;
      tok_.text = std::string(1, c);
      consume(1);
      return;
    }
    fail("parse error at " + pos_str(line_, col_) + ": unexpected character '" +
         std::string(1, c) + "'");
  }

  void consume(size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

bool is_function_name(const std::string& s) {
  return s == "sin" || s == "cos" || s == "sinh" || s == "cosh" || s == "exp" ||
         s == "log" || s == "sqrt";
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::End)
      fail("parse error at " + pos_str(t.line, t.col) + ": unexpected token '" + t.text +
           "' after expression");
    return e;
  }

 private:
  NodePtr make(Node::Kind k, const Token& at, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->line = at.line;
    n->col = at.col;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (lex_.peek().kind == Token::Op && (lex_.peek().op == '+' || lex_.peek().op == '-')) {
      Token op = lex_.take();
      NodePtr rhs = parse_term();
      lhs = make(op.op == '+' ? Node::Add : Node::Sub, op, lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (lex_.peek().kind == Token::Op && (lex_.peek().op == '*' || lex_.peek().op == '/')) {
      Token op = lex_.take();
      NodePtr rhs = parse_unary();
      lhs = make(op.op == '*' ? Node::Mul : Node::Div, op, lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (lex_.peek().kind == Token::Op && lex_.peek().op == '-') {
      Token op = lex_.take();
      return make(Node::Neg, op, parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (lex_.peek().kind == Token::Op && lex_.peek().op == '^') {
      Token op = lex_.take();
      // Right-associative; exponent may itself carry a unary minus (2^-3).
      NodePtr expo = parse_unary();
      return make(Node::Pow, op, base, expo);
    }
    return base;
  }

  NodePtr parse_atom() {
    Token t = lex_.take();
    if (t.kind == Token::Number) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Num;
      n->num = t.num;
      n->line = t.line;
      n->col = t.col;
      return n;
    }
    if (t.kind == Token::Ident) {
      if (lex_.peek().kind == Token::Op && lex_.peek().op == '(') {
        if (!is_function_name(t.text))
          fail("parse error at " + pos_str(t.line, t.col) + ": unknown function '" +
               t.text + "'");
        lex_.take();  // '('
        NodePtr arg = parse_expr();
        const Token& close = lex_.peek();
        if (close.kind != Token::Op || close.op != ')')
          fail("parse error at " + pos_str(close.line, close.col) +
               ": expected ')' to close the argument of '" + t.text + "'");
        lex_.take();
        auto n = std::make_shared<Node>();
        n->kind = Node::Call;
        n->name = t.text;
        n->line = t.line;
        n->col = t.col;
        n->a = std::move(arg);
        return n;
      }
      auto n = std::make_shared<Node>();
      n->kind = Node::Var;
      n->name = t.text;
      n->line = t.line;
      n->col = t.col;
      return n;
    }
    if (t.kind == Token::Op && t.op == '(') {
      NodePtr e = parse_expr();
      const Token& close = lex_.peek();
      if (close.kind != Token::Op || close.op != ')')
        fail("parse error at " + pos_str(close.line, close.col) + ": expected ')'");
      lex_.take();
      return e;
    }
    if (t.kind == Token::End)
      fail("parse error at " + pos_str(t.line, t.col) + ": unexpected end of input");
    fail("parse error at " + pos_str(t.line, t.col) + ": unexpected token '" + t.text + "'");
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Evaluation. The two scalar types (double, Jet2) share one walker; the small
// Ops adapters keep domain guards (log/sqrt/pow/division) identical so that
// double evaluation and jet evaluation fail on exactly the same inputs.
// ---------------------------------------------------------------------------

struct DoubleOps {
  using Scalar = double;
  static double constant(double x) { return x; }
  static double neg(const double& x) { return -x; }
  static double add(const double& a, const double& b) { return a + b; }
  static double sub(const double& a, const double& b) { return a - b; }
  static double mul(const double& a, const double& b) { return a * b; }
  static double div(const double& a, const double& b) {
    if (std::abs(b) <= kEpsJet) fail("division by a value within 1e-12 of zero");
    return a / b;
  }
  static double pw(const double& a, const double& b) {
    const double bi = std::nearbyint(b);
    if (std::abs(b - bi) <= 1e-12 && std::abs(bi) <= 1e6) {
      if (bi < 0 && std::abs(a) <= kEpsJet)
        fail("negative power of a value within 1e-12 of zero");
      return std::pow(a, bi);
    }
    if (a <= kEpsJet) fail("non-integer power of a non-positive value");
    return std::pow(a, b);
  }
  static double call(const std::string& fn, const double& x) {
    if (fn == "sin") return std::sin(x);
    if (fn == "cos") return std::cos(x);
    if (fn == "sinh") return std::sinh(x);
    if (fn == "cosh") return std::cosh(x);
    if (fn == "exp") return std::exp(x);
    if (fn == "log") {
      if (x <= kEpsJet) fail("log of a non-positive value");
      return std::log(x);
    }
    // sqrt
    if (x <= kEpsJet) fail("sqrt of a non-positive value");
    return std::sqrt(x);
  }
};

struct JetOps {
  using Scalar = Jet2;
  int order;
  Jet2 constant(double x) const { return Jet2(order, x); }
  static Jet2 neg(const Jet2& x) { return -x; }
  static Jet2 add(const Jet2& a, const Jet2& b) { return a + b; }
  static Jet2 sub(const Jet2& a, const Jet2& b) { return a - b; }
  static Jet2 mul(const Jet2& a, const Jet2& b) { return a * b; }
  static Jet2 div(const Jet2& a, const Jet2& b) { return a / b; }
  static Jet2 pw(const Jet2& a, const Jet2& b) { return pow(a, b); }
  static Jet2 call(const std::string& fn, const Jet2& x) {
    if (fn == "sin") return sin(x);
    if (fn == "cos") return cos(x);
    if (fn == "sinh") return sinh(x);
    if (fn == "cosh") return cosh(x);
    if (fn == "exp") return exp(x);
    if (fn == "log") return log(x);
    return sqrt(x);
  }
};

template <class Ops, class VarLookup>
typename Ops::Scalar eval_node(const Node& n, const Ops& ops, const VarLookup& var) {
  using S = typename Ops::Scalar;
  switch (n.kind) {
    case Node::Num:
      return ops.constant(n.num);
    case Node::Var:
      return var(n.name, n.line, n.col);
    case Node::Neg:
      return Ops::neg(eval_node(*n.a, ops, var));
    case Node::Add:
      return Ops::add(eval_node(*n.a, ops, var), eval_node(*n.b, ops, var));
    case Node::Sub:
      return Ops::sub(eval_node(*n.a, ops, var), eval_node(*n.b, ops, var));
    case Node::Mul:
      return Ops::mul(eval_node(*n.a, ops, var), eval_node(*n.b, ops, var));
    case Node::Div: {
      S a = eval_node(*n.a, ops, var);
      S b = eval_node(*n.b, ops, var);
      try {
        return Ops::div(a, b);
      } catch (const Error& e) {
        fail("evaluation error at " + pos_str(n.line, n.col) + ": " + e.what());
      }
    }
    case Node::Pow: {
      S a = eval_node(*n.a, ops, var);
      S b = eval_node(*n.b, ops, var);
      try {
        return Ops::pw(a, b);
      } catch (const Error& e) {
        fail("evaluation error at " + pos_str(n.line, n.col) + ": " + e.what());
      }
    }
    case Node::Call: {
      S x = eval_node(*n.a, ops, var);
      try {
        return Ops::call(n.name, x);
      } catch (const Error& e) {
        fail("evaluation error at " + pos_str(n.line, n.col) + ": " + e.what());
      }
    }
  }
  fail("internal: unknown AST node kind");
}

}  // namespace

Expr Expr::parse(const std::string& src) {
  Parser p(src);
  Expr e;
  e.root_ = p.parse();
  e.src_ = src;
  return e;
}

double Expr::eval(const std::map<std::string, double>& env) const {
  if (!root_) fail("evaluation of an empty expression");
  auto var = [&env](const std::string& name, int line, int col) -> double {
    auto it = env.find(name);
    if (it == env.end())
      fail("evaluation error at " + pos_str(line, col) + ": unknown identifier '" + name +
           "'");
    return it->second;
  };
  return eval_node(*root_, DoubleOps{}, var);
}

Jet2 Expr::eval_jet(const Jet2& u, const Jet2& v,
                    const std::map<std::string, double>& params) const {
  if (!root_) fail("evaluation of an empty expression");
  const int order = std::min(u.order(), v.order());
  JetOps ops{order};
  auto var = [&](const std::string& name, int line, int col) -> Jet2 {
    if (name == "u") return u.truncated(order);
    if (name == "v") return v.truncated(order);
    auto it = params.find(name);
    if (it == params.end())
      fail("evaluation error at " + pos_str(line, col) + ": unknown identifier '" + name +
           "'");
    return Jet2(order, it->second);
  };
  return eval_node(*root_, ops, var);
}

}  // namespace lcs
