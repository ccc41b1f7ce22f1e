#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace austere4::numerics {

/// Immutable expression tree over indexed domain variables.
///
/// Expressions are cheap to copy (shared nodes) and safe to share between
/// threads. They are the map descriptors consumed by jet_eval: every
/// evaluator in the library is built from these primitives so that first
/// and second derivatives are exact.
class Expr {
 public:
  enum class Op {
    kConst,
    kVar,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kSin,
    kCos,
    kExp,
    kSqrt,
    kPowInt,
    kPowReal,
  };

  struct Node {
    Op op = Op::kConst;
    double scalar = 0.0;  // constant value or real exponent
    int index = 0;        // variable index or integer exponent
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Expr();  // the constant 0
  Expr(double value);  // NOLINT(google-explicit-constructor)

  static Expr variable(int index);

  Op op() const { return node_->op; }
  const Node& node() const { return *node_; }
  bool is_constant() const { return node_->op == Op::kConst; }
  double constant_value() const { return node_->scalar; }

  /// Largest variable index referenced plus one (0 for closed constants).
  int arity() const;

  /// Replace variable i with replacements[i].
  Expr substitute(std::span<const Expr> replacements) const;

  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr sqrt(const Expr& a);
  friend Expr pow(const Expr& a, int n);
  friend Expr pow(const Expr& a, double p);

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const std::shared_ptr<const Node>& shared() const { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

/// Real and imaginary parts of a complex-valued expression.
struct ComplexExpr {
  Expr re;
  Expr im;
};

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b);

}  // namespace austere4::numerics
