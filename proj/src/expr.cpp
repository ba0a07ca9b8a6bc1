#include "geocrystal/expr.hpp"

#include <stdexcept>
#include <unordered_set>

#include "geocrystal/error.hpp"

namespace geocrystal {

const char* op_name(Op op) {
    switch (op) {
        case Op::Var: return "var";
        case Op::Const: return "const";
        case Op::Add: return "add";
        case Op::Sub: return "sub";
        case Op::Mul: return "mul";
        case Op::Div: return "div";
        case Op::Pow: return "pow";
    }
    return "?";
}

Expr Expr::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    auto n = std::make_shared<detail::Node>();
    n->op = Op::Var;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::constant(Rational value) {
    if (value.is_zero()) throw std::invalid_argument("zero constant in expression");
    auto n = std::make_shared<detail::Node>();
    n->op = Op::Const;
    n->value = std::move(value);
    return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr a, Expr b) {
    auto n = std::make_shared<detail::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return Expr(std::move(n));
}

Expr Expr::add(Expr a, Expr b) { return binary(Op::Add, std::move(a), std::move(b)); }
Expr Expr::sub(Expr a, Expr b) { return binary(Op::Sub, std::move(a), std::move(b)); }
Expr Expr::mul(Expr a, Expr b) { return binary(Op::Mul, std::move(a), std::move(b)); }
Expr Expr::div(Expr a, Expr b) { return binary(Op::Div, std::move(a), std::move(b)); }

Expr Expr::pow(Expr base, long exponent) {
    auto n = std::make_shared<detail::Node>();
    n->op = Op::Pow;
    n->exponent = exponent;
    n->a = std::move(base);
    return Expr(std::move(n));
}

Op Expr::op() const { return node_->op; }

const std::string& Expr::name() const {
    if (node_->op != Op::Var) throw std::logic_error("Expr::name on non-variable");
    return node_->name;
}

const Rational& Expr::value() const {
    if (node_->op != Op::Const) throw std::logic_error("Expr::value on non-constant");
    return node_->value;
}

long Expr::exponent() const {
    if (node_->op != Op::Pow) throw std::logic_error("Expr::exponent on non-power");
    return node_->exponent;
}

const Expr& Expr::lhs() const {
    if (!node_->a) throw std::logic_error("Expr::lhs on leaf");
    return *node_->a;
}

const Expr& Expr::rhs() const {
    if (!node_->b) throw std::logic_error("Expr::rhs on unary or leaf");
    return *node_->b;
}

std::size_t Expr::arity() const {
    switch (node_->op) {
        case Op::Var:
        case Op::Const: return 0;
        case Op::Pow: return 1;
        default: return 2;
    }
}

Expr var(const std::string& name) { return Expr::var(name); }
Expr cst(const Rational& value) { return Expr::constant(value); }
Expr pow(const Expr& base, long exponent) { return Expr::pow(base, exponent); }

Expr sum_of(std::span<const Expr> terms) {
    if (terms.empty()) throw std::invalid_argument("sum_of: empty sum has no nonzero representation");
    Expr acc = terms.front();
    for (std::size_t k = 1; k < terms.size(); ++k) acc = acc + terms[k];
    return acc;
}

Expr product_of(std::span<const Expr> factors) {
    if (factors.empty()) return Expr::one();
    Expr acc = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) acc = acc * factors[k];
    return acc;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.id() == b.id()) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
        case Op::Var: return a.name() == b.name();
        case Op::Const: return a.value() == b.value();
        case Op::Pow: return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
        default: return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    }
}

namespace {

template <class Visit>
void visit_dag(const Expr& e, std::unordered_set<const detail::Node*>& seen, Visit&& visit) {
    if (!seen.insert(e.id()).second) return;
    visit(e);
    if (e.arity() >= 1) visit_dag(e.lhs(), seen, visit);
    if (e.arity() == 2) visit_dag(e.rhs(), seen, visit);
}

}  // namespace

std::set<std::string> free_variables(const Expr& e) {
    std::set<std::string> out;
    std::unordered_set<const detail::Node*> seen;
    visit_dag(e, seen, [&](const Expr& n) {
        if (n.is_var()) out.insert(n.name());
    });
    return out;
}

std::size_t dag_size(const Expr& e) {
    std::unordered_set<const detail::Node*> seen;
    visit_dag(e, seen, [](const Expr&) {});
    return seen.size();
}

namespace {

class Substituter {
public:
    explicit Substituter(const std::map<std::string, Expr>& bindings) : bindings_(bindings) {}

    Expr operator()(const Expr& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        Expr out = rebuild(e);
        memo_.emplace(e.id(), out);
        return out;
    }

private:
    Expr rebuild(const Expr& e) {
        switch (e.op()) {
            case Op::Var: {
                auto it = bindings_.find(e.name());
                return it == bindings_.end() ? e : it->second;
            }
            case Op::Const: return e;
            case Op::Pow: {
                Expr base = (*this)(e.lhs());
                return base.id() == e.lhs().id() ? e : Expr::pow(base, e.exponent());
            }
            default: {
                Expr a = (*this)(e.lhs());
                Expr b = (*this)(e.rhs());
                if (a.id() == e.lhs().id() && b.id() == e.rhs().id()) return e;
                switch (e.op()) {
                    case Op::Add: return a + b;
                    case Op::Sub: return a - b;
                    case Op::Mul: return a * b;
                    default: return a / b;
                }
            }
        }
    }

    const std::map<std::string, Expr>& bindings_;
    std::unordered_map<const detail::Node*, Expr> memo_;
};

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
    Substituter s(bindings);
    return s(e);
}

Expr rename(const Expr& e, const std::function<std::string(const std::string&)>& f) {
    std::map<std::string, Expr> bindings;
    for (const auto& v : free_variables(e)) {
        auto renamed = f(v);
        if (renamed != v) bindings.emplace(v, Expr::var(std::move(renamed)));
    }
    return bindings.empty() ? e : substitute(e, bindings);
}

Rational Evaluator::operator()(const Expr& e) {
    if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
    Rational v;
    switch (e.op()) {
        case Op::Var: {
            auto it = point_->find(e.name());
            if (it == point_->end()) throw UnboundVariable(e.name());
            v = it->second;
            break;
        }
        case Op::Const: v = e.value(); break;
        case Op::Add: v = (*this)(e.lhs()) + (*this)(e.rhs()); break;
        case Op::Sub: v = (*this)(e.lhs()) - (*this)(e.rhs()); break;
        case Op::Mul: v = (*this)(e.lhs()) * (*this)(e.rhs()); break;
        case Op::Div: v = (*this)(e.lhs()) / (*this)(e.rhs()); break;
        case Op::Pow: v = (*this)(e.lhs()).pow(e.exponent()); break;
    }
    cache_.emplace(e.id(), v);
    return v;
}

Rational evaluate(const Expr& e, const Assignment& point) {
    Evaluator ev(point);
    return ev(e);
}

namespace {

bool find_blocked(const Expr& e, const std::string& path, std::unordered_set<const detail::Node*>& clean,
                  SubtractionFreeVerdict& out) {
    if (clean.contains(e.id())) return false;
    if (e.op() == Op::Sub) {
        out = {false, path, "subtraction node"};
        return true;
    }
    if (e.op() == Op::Const && e.value().sign() < 0) {
        out = {false, path, "negative constant " + e.value().str()};
        return true;
    }
    if (e.arity() >= 1 && find_blocked(e.lhs(), path + "/args/0", clean, out)) return true;
    if (e.arity() == 2 && find_blocked(e.rhs(), path + "/args/1", clean, out)) return true;
    clean.insert(e.id());
    return false;
}

}  // namespace

SubtractionFreeVerdict certify_subtraction_free(const Expr& e) {
    SubtractionFreeVerdict out;
    std::unordered_set<const detail::Node*> clean;
    find_blocked(e, "", clean, out);
    if (!out.free && out.path.empty()) out.path = "/";
    return out;
}

}  // namespace geocrystal
