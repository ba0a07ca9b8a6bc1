#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "geocrystal/rational.hpp"
#include "geocrystal/sampling.hpp"

namespace geocrystal {

enum class Op { Var, Const, Add, Sub, Mul, Div, Pow };

const char* op_name(Op op);

class Expr;

namespace detail {
struct Node;
}

/// Immutable handle to a rational-expression tree. Subtrees are shared, so a
/// handle is cheap to copy and large families of maps can reuse common
/// pieces (the result is a DAG; every traversal below memoizes on nodes).
class Expr {
public:
    static Expr var(std::string name);
    /// Throws std::invalid_argument for zero: constants are nonzero by invariant.
    static Expr constant(Rational value);
    static Expr one() { return constant(Rational(1)); }
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr base, long exponent);

    Op op() const;
    const std::string& name() const;      // Var only
    const Rational& value() const;        // Const only
    long exponent() const;                // Pow only
    const Expr& lhs() const;             // binary ops, Pow base
    const Expr& rhs() const;             // binary ops
    std::size_t arity() const;

    const detail::Node* id() const noexcept { return node_.get(); }

    bool is_var() const { return op() == Op::Var; }
    bool is_const() const { return op() == Op::Const; }

private:
    explicit Expr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    static Expr binary(Op op, Expr a, Expr b);
    std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
    Op op;
    std::string name;
    Rational value;
    long exponent = 0;
    std::optional<Expr> a;
    std::optional<Expr> b;
};
}  // namespace detail

inline Expr operator+(Expr a, Expr b) { return Expr::add(std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::sub(std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::mul(std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::div(std::move(a), std::move(b)); }

Expr var(const std::string& name);
Expr cst(const Rational& value);
Expr pow(const Expr& base, long exponent);

/// Left-nested sum / product; an empty product is the constant 1.
Expr sum_of(std::span<const Expr> terms);
Expr product_of(std::span<const Expr> factors);

bool structurally_equal(const Expr& a, const Expr& b);

std::set<std::string> free_variables(const Expr& e);

/// Number of distinct nodes in the DAG.
std::size_t dag_size(const Expr& e);

/// Simultaneous substitution of variables by expressions. Shared subtrees stay
/// shared in the result.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

/// Renames every variable through `f` (variables mapped to themselves are kept).
Expr rename(const Expr& e, const std::function<std::string(const std::string&)>& f);

/// Evaluates expressions exactly at one point, caching node values so a family
/// of maps with shared subtrees is evaluated once per node.
///
/// Throws UnboundVariable for a missing variable and DivisionByZero on a pole.
class Evaluator {
public:
    explicit Evaluator(const Assignment& point) : point_(&point) {}
    Rational operator()(const Expr& e);

private:
    const Assignment* point_;
    std::unordered_map<const detail::Node*, Rational> cache_;
};

Rational evaluate(const Expr& e, const Assignment& point);

/// Result of the positivity certificate: either free, or the JSON-pointer path
/// (into the {"op","args"} tree form) of the first offending node.
struct SubtractionFreeVerdict {
    bool free = true;
    std::string path;
    std::string reason;
};

SubtractionFreeVerdict certify_subtraction_free(const Expr& e);

}  // namespace geocrystal
