#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "geocrystal/expr.hpp"

namespace geocrystal {

enum class TropOp { Var, Const, Max, Min, Add, Sub };

const char* trop_op_name(TropOp op);

namespace detail {
struct TropNode;
}

/// Immutable piecewise-linear expression over the integers. Subtrees are
/// shared like Expr.
class TropExpr {
public:
    static TropExpr var(std::string name);
    static TropExpr constant(std::int64_t value);
    static TropExpr max(TropExpr a, TropExpr b);
    static TropExpr min(TropExpr a, TropExpr b);
    static TropExpr add(TropExpr a, TropExpr b);
    static TropExpr sub(TropExpr a, TropExpr b);

    TropOp op() const;
    const std::string& name() const;  // Var only
    std::int64_t value() const;       // Const only
    const TropExpr& lhs() const;
    const TropExpr& rhs() const;

    const detail::TropNode* id() const noexcept { return node_.get(); }

private:
    explicit TropExpr(std::shared_ptr<const detail::TropNode> n) : node_(std::move(n)) {}
    static TropExpr binary(TropOp op, TropExpr a, TropExpr b);
    std::shared_ptr<const detail::TropNode> node_;
};

namespace detail {
struct TropNode {
    TropOp op;
    std::string name;
    std::int64_t value = 0;
    std::optional<TropExpr> a;
    std::optional<TropExpr> b;
};
}  // namespace detail

inline TropExpr operator+(TropExpr a, TropExpr b) { return TropExpr::add(std::move(a), std::move(b)); }
inline TropExpr operator-(TropExpr a, TropExpr b) { return TropExpr::sub(std::move(a), std::move(b)); }

bool structurally_equal(const TropExpr& a, const TropExpr& b);

using TropPoint = std::map<std::string, std::int64_t>;

/// Memoized integer evaluation. Throws UnboundVariable, and std::overflow_error
/// if a value leaves the 64-bit range.
class TropEvaluator {
public:
    explicit TropEvaluator(const TropPoint& point) : point_(&point) {}
    std::int64_t operator()(const TropExpr& e);

private:
    const TropPoint* point_;
    std::unordered_map<const detail::TropNode*, std::int64_t> cache_;
};

std::int64_t evaluate(const TropExpr& e, const TropPoint& point);

TropExpr substitute(const TropExpr& e, const std::map<std::string, TropExpr>& bindings);

std::string to_string(const TropExpr& e);

/// {"op": "max", "args": [...]}, {"op": "var", "name": ...}, {"op": "const", "value": k}.
nlohmann::json to_json(const TropExpr& e);

enum class Semiring { max_plus, min_plus };

/// x*y -> X+Y, x/y -> X-Y, x+y -> max(X,Y) (min under min_plus), positive
/// constant -> 0, x^k -> k-fold sum (negated for k < 0). A constant other
/// than 1 is recorded in `warnings` with its node path.
///
/// Throws NotSubtractionFree with the offending path otherwise.
TropExpr tropicalize(const Expr& e, Semiring semiring = Semiring::max_plus,
                     std::vector<std::string>* warnings = nullptr);

}  // namespace geocrystal
