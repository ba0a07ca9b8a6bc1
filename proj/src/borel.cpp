#include "geocrystal/borel.hpp"

#include <stdexcept>

#include "geocrystal/error.hpp"

namespace geocrystal {

SymScalar::SymScalar(int v) {
    if (v != 0) e_ = Expr::constant(Rational(v));
}

const Expr& SymScalar::expr() const {
    if (!e_) throw std::logic_error("zero SymScalar has no expression");
    return *e_;
}

bool SymScalar::same_node(const SymScalar& o) const {
    if (!e_ || !o.e_) return !e_ && !o.e_;
    return e_->id() == o.e_->id();
}

SymScalar operator+(const SymScalar& a, const SymScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return SymScalar(a.expr() + b.expr());
}

SymScalar operator-(const SymScalar& a) {
    if (a.is_zero()) return a;
    return SymScalar(Expr::constant(-1) * a.expr());
}

SymScalar operator-(const SymScalar& a, const SymScalar& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return SymScalar(a.expr() - b.expr());
}

SymScalar operator*(const SymScalar& a, const SymScalar& b) {
    if (a.is_zero() || b.is_zero()) return SymScalar();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return SymScalar(a.expr() * b.expr());
}

SymScalar operator/(const SymScalar& a, const SymScalar& b) {
    if (b.is_zero()) throw DivisionByZero("symbolic division by zero");
    if (a.is_zero()) return a;
    if (b.is_one()) return a;
    return SymScalar(a.expr() / b.expr());
}

std::string borel_u(int s, int t) {
    return s == t ? "u" + std::to_string(s) : "u" + std::to_string(s) + "_" + std::to_string(t);
}

std::string borel_t(int k) { return "t" + std::to_string(k); }

BorelElement::BorelElement(RationalMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2) throw std::invalid_argument("Borel element must be square, size >= 2");
    Rational det = 1;
    for (Eigen::Index r = 0; r < m_.rows(); ++r) {
        if (m_(r, r).is_zero()) throw std::invalid_argument("Borel element has a zero diagonal entry");
        det *= m_(r, r);
        for (Eigen::Index c = r + 1; c < m_.cols(); ++c)
            if (!m_(r, c).is_zero()) throw std::invalid_argument("Borel element must be lower triangular");
    }
    if (!det.is_one()) throw std::invalid_argument("Borel element must have determinant 1");
}

BorelElement BorelElement::identity(int n) {
    return BorelElement(RationalMatrix::Identity(n + 1, n + 1));
}

BorelElement BorelElement::from_coordinates(int n, const Assignment& coords) {
    auto get = [&](const std::string& name) {
        auto it = coords.find(name);
        if (it == coords.end()) throw UnboundVariable(name);
        return it->second;
    };
    RationalMatrix m = RationalMatrix::Zero(n + 1, n + 1);
    for (int k = 1; k <= n + 1; ++k) m(k - 1, k - 1) = get(borel_t(k));
    for (int s = 1; s <= n; ++s)
        for (int t = s; t <= n; ++t) m(t, s - 1) = get(borel_u(s, t)) * m(s - 1, s - 1);
    return BorelElement(std::move(m));
}

Rational BorelElement::t(int k) const { return m_(k - 1, k - 1); }

Rational BorelElement::u(int s, int t) const { return m_(t, s - 1) / m_(s - 1, s - 1); }

RationalMatrix BorelElement::unipotent() const {
    RationalMatrix out = m_;
    for (Eigen::Index c = 0; c < m_.cols(); ++c) {
        const Rational d = m_(c, c);
        for (Eigen::Index r = c; r < m_.rows(); ++r) out(r, c) = m_(r, c) / d;
    }
    return out;
}

Assignment BorelElement::coordinates() const {
    Assignment a;
    for (int k = 1; k <= n() + 1; ++k) a.emplace(borel_t(k), t(k));
    for (int s = 1; s <= n(); ++s)
        for (int r = s; r <= n(); ++r) a.emplace(borel_u(s, r), u(s, r));
    return a;
}

nlohmann::json BorelElement::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m_.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m_.cols(); ++c) row.push_back(m_(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

BorelElement BorelElement::from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("Borel element JSON must be a nonempty array of rows");
    const auto size = static_cast<Eigen::Index>(j.size());
    RationalMatrix m(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != size)
            throw std::invalid_argument("Borel element JSON must be square");
        for (Eigen::Index c = 0; c < size; ++c) m(r, c) = Rational::parse(row.at(static_cast<std::size_t>(c)).get<std::string>());
    }
    return BorelElement(std::move(m));
}

BorelElement borel_multiply(const BorelElement& x, const BorelElement& y) {
    if (x.n() != y.n()) throw std::invalid_argument("borel_multiply: size mismatch");
    return BorelElement(x.matrix().lazyProduct(y.matrix()));
}

SymMatrix borel_symbolic_matrix(int n) {
    SymMatrix m = SymMatrix::Zero(n + 1, n + 1);
    for (int k = 1; k <= n + 1; ++k) m(k - 1, k - 1) = SymScalar(var(borel_t(k)));
    for (int s = 1; s <= n; ++s)
        for (int t = s; t <= n; ++t) m(t, s - 1) = SymScalar(var(borel_u(s, t)) * var(borel_t(s)));
    return m;
}

}  // namespace geocrystal
