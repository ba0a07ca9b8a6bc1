#include "geocrystal/trop_expr.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <utility>

#include "geocrystal/error.hpp"

namespace geocrystal {

const char* trop_op_name(TropOp op) {
    switch (op) {
        case TropOp::Var: return "var";
        case TropOp::Const: return "const";
        case TropOp::Max: return "max";
        case TropOp::Min: return "min";
        case TropOp::Add: return "add";
        case TropOp::Sub: return "sub";
    }
    return "?";
}

TropExpr TropExpr::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    auto n = std::make_shared<detail::TropNode>();
    n->op = TropOp::Var;
    n->name = std::move(name);
    return TropExpr(std::move(n));
}

TropExpr TropExpr::constant(std::int64_t value) {
    auto n = std::make_shared<detail::TropNode>();
    n->op = TropOp::Const;
    n->value = value;
    return TropExpr(std::move(n));
}

TropExpr TropExpr::binary(TropOp op, TropExpr a, TropExpr b) {
    auto n = std::make_shared<detail::TropNode>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return TropExpr(std::move(n));
}

TropExpr TropExpr::max(TropExpr a, TropExpr b) { return binary(TropOp::Max, std::move(a), std::move(b)); }
TropExpr TropExpr::min(TropExpr a, TropExpr b) { return binary(TropOp::Min, std::move(a), std::move(b)); }
TropExpr TropExpr::add(TropExpr a, TropExpr b) { return binary(TropOp::Add, std::move(a), std::move(b)); }
TropExpr TropExpr::sub(TropExpr a, TropExpr b) { return binary(TropOp::Sub, std::move(a), std::move(b)); }

TropOp TropExpr::op() const { return node_->op; }

const std::string& TropExpr::name() const {
    if (op() != TropOp::Var) throw std::logic_error("name() on a non-variable");
    return node_->name;
}

std::int64_t TropExpr::value() const {
    if (op() != TropOp::Const) throw std::logic_error("value() on a non-constant");
    return node_->value;
}

const TropExpr& TropExpr::lhs() const {
    if (!node_->a) throw std::logic_error("lhs() on a leaf");
    return *node_->a;
}

const TropExpr& TropExpr::rhs() const {
    if (!node_->b) throw std::logic_error("rhs() on a leaf");
    return *node_->b;
}

namespace {

bool equal_rec(const TropExpr& a, const TropExpr& b, std::set<std::pair<const void*, const void*>>& seen) {
    if (a.id() == b.id()) return true;
    if (a.op() != b.op()) return false;
    if (!seen.emplace(a.id(), b.id()).second) return true;
    switch (a.op()) {
        case TropOp::Var: return a.name() == b.name();
        case TropOp::Const: return a.value() == b.value();
        default: return equal_rec(a.lhs(), b.lhs(), seen) && equal_rec(a.rhs(), b.rhs(), seen);
    }
}

std::int64_t checked(TropOp op, std::int64_t x, std::int64_t y) {
    std::int64_t r = 0;
    const bool bad = op == TropOp::Add ? __builtin_add_overflow(x, y, &r) : __builtin_sub_overflow(x, y, &r);
    if (bad) throw std::overflow_error("tropical evaluation overflow");
    return r;
}

}  // namespace

bool structurally_equal(const TropExpr& a, const TropExpr& b) {
    std::set<std::pair<const void*, const void*>> seen;
    return equal_rec(a, b, seen);
}

std::int64_t TropEvaluator::operator()(const TropExpr& e) {
    if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
    std::int64_t v = 0;
    switch (e.op()) {
        case TropOp::Var: {
            auto it = point_->find(e.name());
            if (it == point_->end()) throw UnboundVariable(e.name());
            v = it->second;
            break;
        }
        case TropOp::Const: v = e.value(); break;
        case TropOp::Max: v = std::max((*this)(e.lhs()), (*this)(e.rhs())); break;
        case TropOp::Min: v = std::min((*this)(e.lhs()), (*this)(e.rhs())); break;
        case TropOp::Add:
        case TropOp::Sub: v = checked(e.op(), (*this)(e.lhs()), (*this)(e.rhs())); break;
    }
    cache_.emplace(e.id(), v);
    return v;
}

std::int64_t evaluate(const TropExpr& e, const TropPoint& point) {
    TropEvaluator ev(point);
    return ev(e);
}

TropExpr substitute(const TropExpr& e, const std::map<std::string, TropExpr>& bindings) {
    std::unordered_map<const detail::TropNode*, TropExpr> memo;
    std::function<TropExpr(const TropExpr&)> go = [&](const TropExpr& x) -> TropExpr {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        TropExpr out = x;
        switch (x.op()) {
            case TropOp::Var:
                if (auto b = bindings.find(x.name()); b != bindings.end()) out = b->second;
                break;
            case TropOp::Const: break;
            case TropOp::Max: out = TropExpr::max(go(x.lhs()), go(x.rhs())); break;
            case TropOp::Min: out = TropExpr::min(go(x.lhs()), go(x.rhs())); break;
            case TropOp::Add: out = go(x.lhs()) + go(x.rhs()); break;
            case TropOp::Sub: out = go(x.lhs()) - go(x.rhs()); break;
        }
        memo.emplace(x.id(), out);
        return out;
    };
    return go(e);
}

std::string to_string(const TropExpr& e) {
    std::unordered_map<const detail::TropNode*, std::string> memo;
    std::function<std::string(const TropExpr&, bool)> go = [&](const TropExpr& x, bool wrap) -> std::string {
        std::string s;
        if (auto it = memo.find(x.id()); it != memo.end()) {
            s = it->second;
        } else {
            switch (x.op()) {
                case TropOp::Var: s = x.name(); break;
                case TropOp::Const: s = std::to_string(x.value()); break;
                case TropOp::Max:
                case TropOp::Min:
                    s = std::string(trop_op_name(x.op())) + "(" + go(x.lhs(), false) + ", " + go(x.rhs(), false) + ")";
                    break;
                case TropOp::Add: s = go(x.lhs(), false) + " + " + go(x.rhs(), true); break;
                case TropOp::Sub: s = go(x.lhs(), false) + " - " + go(x.rhs(), true); break;
            }
            memo.emplace(x.id(), s);
        }
        const bool compound = x.op() == TropOp::Add || x.op() == TropOp::Sub || (x.op() == TropOp::Const && x.value() < 0);
        return wrap && compound ? "(" + s + ")" : s;
    };
    return go(e, false);
}

nlohmann::json to_json(const TropExpr& e) {
    using nlohmann::json;
    switch (e.op()) {
        case TropOp::Var: return json{{"op", "var"}, {"name", e.name()}};
        case TropOp::Const: return json{{"op", "const"}, {"value", e.value()}};
        default: return json{{"op", trop_op_name(e.op())}, {"args", json::array({to_json(e.lhs()), to_json(e.rhs())})}};
    }
}

TropExpr tropicalize(const Expr& e, Semiring semiring, std::vector<std::string>* warnings) {
    if (const auto cert = certify_subtraction_free(e); !cert.free) throw NotSubtractionFree(cert.path, cert.reason);
    std::unordered_map<const detail::Node*, TropExpr> memo;
    const TropExpr zero = TropExpr::constant(0);
    std::function<TropExpr(const Expr&, const std::string&)> go = [&](const Expr& x, const std::string& path) {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        auto arg = [&](int k) { return path + "/args/" + std::to_string(k); };
        TropExpr out = zero;
        switch (x.op()) {
            case Op::Var: out = TropExpr::var(x.name()); break;
            case Op::Const:
                if (warnings && !x.value().is_one())
                    warnings->push_back("constant " + x.value().str() + " at " + (path.empty() ? "/" : path) +
                                        " mapped to 0");
                break;
            case Op::Add: {
                TropExpr a = go(x.lhs(), arg(0)), b = go(x.rhs(), arg(1));
                out = semiring == Semiring::max_plus ? TropExpr::max(a, b) : TropExpr::min(a, b);
                break;
            }
            case Op::Mul: out = go(x.lhs(), arg(0)) + go(x.rhs(), arg(1)); break;
            case Op::Div: out = go(x.lhs(), arg(0)) - go(x.rhs(), arg(1)); break;
            case Op::Pow: {
                const long k = x.exponent();
                if (k != 0) {
                    const TropExpr base = go(x.lhs(), arg(0));
                    out = base;
                    for (long r = 1; r < (k < 0 ? -k : k); ++r) out = out + base;
                    if (k < 0) out = zero - out;
                }
                break;
            }
            case Op::Sub: throw std::logic_error("subtraction passed the certificate");
        }
        memo.emplace(x.id(), out);
        return out;
    };
    return go(e, "");
}

}  // namespace geocrystal
