#include "austere4/numerics/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "austere4/numerics/errors.hpp"

namespace austere4::numerics {
namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

Expr make(Expr::Op op, const Expr& lhs, const Expr& rhs = Expr()) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->lhs = lhs.shared();
  if (op == Expr::Op::kAdd || op == Expr::Op::kSub || op == Expr::Op::kMul ||
      op == Expr::Op::kDiv) {
    n->rhs = rhs.shared();
  }
  return Expr(NodePtr(std::move(n)));
}

bool is_const(const Expr& e, double v) { return e.is_constant() && e.constant_value() == v; }

int arity_of(const Expr::Node& n) {
  switch (n.op) {
    case Expr::Op::kConst:
      return 0;
    case Expr::Op::kVar:
      return n.index + 1;
    default: {
      int a = n.lhs ? arity_of(*n.lhs) : 0;
      int b = n.rhs ? arity_of(*n.rhs) : 0;
      return std::max(a, b);
    }
  }
}

void print(const Expr::Node& n, std::ostream& os) {
  auto unary = [&](const char* name) {
    os << name << '(';
    print(*n.lhs, os);
    os << ')';
  };
  auto binary = [&](const char* sym) {
    os << '(';
    print(*n.lhs, os);
    os << ' ' << sym << ' ';
    print(*n.rhs, os);
    os << ')';
  };
  switch (n.op) {
    case Expr::Op::kConst: os << n.scalar; break;
    case Expr::Op::kVar: os << 'x' << n.index; break;
    case Expr::Op::kAdd: binary("+"); break;
    case Expr::Op::kSub: binary("-"); break;
    case Expr::Op::kMul: binary("*"); break;
    case Expr::Op::kDiv: binary("/"); break;
    case Expr::Op::kNeg: unary("-"); break;
    case Expr::Op::kSin: unary("sin"); break;
    case Expr::Op::kCos: unary("cos"); break;
    case Expr::Op::kExp: unary("exp"); break;
    case Expr::Op::kSqrt: unary("sqrt"); break;
    case Expr::Op::kPowInt:
      os << "pow(";
      print(*n.lhs, os);
      os << ", " << n.index << ')';
      break;
    case Expr::Op::kPowReal:
      os << "pow(";
      print(*n.lhs, os);
      os << ", " << n.scalar << ')';
      break;
  }
}

Expr substitute_node(const NodePtr& n, std::span<const Expr> repl,
                     std::unordered_map<const Expr::Node*, Expr>& memo) {
  if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
  Expr out;
  switch (n->op) {
    case Expr::Op::kConst:
      out = Expr(n);
      break;
    case Expr::Op::kVar:
      if (n->index >= static_cast<int>(repl.size())) {
        throw PreconditionError("substitute: no replacement for variable x" +
                                std::to_string(n->index));
      }
      out = repl[static_cast<std::size_t>(n->index)];
      break;
    default: {
      Expr a = substitute_node(n->lhs, repl, memo);
      Expr b = n->rhs ? substitute_node(n->rhs, repl, memo) : Expr();
      switch (n->op) {
        case Expr::Op::kAdd: out = a + b; break;
        case Expr::Op::kSub: out = a - b; break;
        case Expr::Op::kMul: out = a * b; break;
        case Expr::Op::kDiv: out = a / b; break;
        case Expr::Op::kNeg: out = -a; break;
        case Expr::Op::kSin: out = sin(a); break;
        case Expr::Op::kCos: out = cos(a); break;
        case Expr::Op::kExp: out = exp(a); break;
        case Expr::Op::kSqrt: out = sqrt(a); break;
        case Expr::Op::kPowInt: out = pow(a, n->index); break;
        case Expr::Op::kPowReal: out = pow(a, n->scalar); break;
        default: break;
      }
    }
  }
  memo.emplace(n.get(), out);
  return out;
}

}  // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::kConst;
  n->scalar = value;
  node_ = std::move(n);
}

Expr Expr::variable(int index) {
  if (index < 0) throw PreconditionError("variable index must be nonnegative");
  auto n = std::make_shared<Node>();
  n->op = Op::kVar;
  n->index = index;
  return Expr(NodePtr(std::move(n)));
}

int Expr::arity() const { return arity_of(*node_); }

Expr Expr::substitute(std::span<const Expr> replacements) const {
  std::unordered_map<const Node*, Expr> memo;
  return substitute_node(node_, replacements, memo);
}

std::string Expr::to_string() const {
  std::ostringstream os;
  print(*node_, os);
  return os.str();
}

// Constant folding is limited to exact identities so that folded and
// unfolded trees evaluate to the same bits.
Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return {a.constant_value() + b.constant_value()};
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make(Expr::Op::kAdd, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return {a.constant_value() - b.constant_value()};
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return -b;
  return make(Expr::Op::kSub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return {a.constant_value() * b.constant_value()};
  if (is_const(a, 0.0) || is_const(b, 0.0)) return {0.0};
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make(Expr::Op::kMul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (is_const(b, 1.0)) return a;
  return make(Expr::Op::kDiv, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return {-a.constant_value()};
  return make(Expr::Op::kNeg, a);
}

Expr sin(const Expr& a) {
  if (a.is_constant()) return {std::sin(a.constant_value())};
  return make(Expr::Op::kSin, a);
}

Expr cos(const Expr& a) {
  if (a.is_constant()) return {std::cos(a.constant_value())};
  return make(Expr::Op::kCos, a);
}

Expr exp(const Expr& a) {
  if (a.is_constant()) return {std::exp(a.constant_value())};
  return make(Expr::Op::kExp, a);
}

Expr sqrt(const Expr& a) { return make(Expr::Op::kSqrt, a); }

Expr pow(const Expr& a, int n) {
  if (n == 0) return {1.0};
  if (n == 1) return a;
  auto node = std::make_shared<Expr::Node>();
  node->op = Expr::Op::kPowInt;
  node->index = n;
  node->lhs = a.shared();
  return Expr(NodePtr(std::move(node)));
}

Expr pow(const Expr& a, double p) {
  auto node = std::make_shared<Expr::Node>();
  node->op = Expr::Op::kPowReal;
  node->scalar = p;
  node->lhs = a.shared();
  return Expr(NodePtr(std::move(node)));
}

Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace austere4::numerics
