#pragma once

#include <optional>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "geocrystal/expr.hpp"
#include "geocrystal/rational.hpp"
#include "geocrystal/sampling.hpp"

namespace geocrystal {

/// Expression-valued matrix entry that folds the additive and multiplicative
/// units, so symbolic products of sparse triangular matrices stay small.
/// An empty value is zero.
class SymScalar {
public:
    SymScalar() = default;
    SymScalar(int v);  // NOLINT: Eigen builds 0 and 1 from int literals
    SymScalar(Expr e) : e_(std::move(e)) {}  // NOLINT

    bool is_zero() const { return !e_; }
    bool is_one() const { return e_ && e_->is_const() && e_->value().is_one(); }
    /// Throws std::logic_error when zero (zero has no expression form).
    const Expr& expr() const;

    friend SymScalar operator+(const SymScalar& a, const SymScalar& b);
    friend SymScalar operator-(const SymScalar& a, const SymScalar& b);
    friend SymScalar operator*(const SymScalar& a, const SymScalar& b);
    friend SymScalar operator/(const SymScalar& a, const SymScalar& b);
    friend SymScalar operator-(const SymScalar& a);
    SymScalar& operator+=(const SymScalar& o) { return *this = *this + o; }
    SymScalar& operator-=(const SymScalar& o) { return *this = *this - o; }
    SymScalar& operator*=(const SymScalar& o) { return *this = *this * o; }
    SymScalar& operator/=(const SymScalar& o) { return *this = *this / o; }

    /// Same node, not structural equality: used to detect untouched entries.
    bool same_node(const SymScalar& o) const;

private:
    std::optional<Expr> e_;
};

}  // namespace geocrystal

namespace Eigen {

template <>
struct NumTraits<geocrystal::Rational> : GenericNumTraits<geocrystal::Rational> {
    using Real = geocrystal::Rational;
    using NonInteger = geocrystal::Rational;
    using Nested = geocrystal::Rational;
    using Literal = geocrystal::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 64,
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<geocrystal::SymScalar> : GenericNumTraits<geocrystal::SymScalar> {
    using Real = geocrystal::SymScalar;
    using NonInteger = geocrystal::SymScalar;
    using Nested = geocrystal::SymScalar;
    using Literal = geocrystal::SymScalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 64,
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace geocrystal {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using SymMatrix = Eigen::Matrix<SymScalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Variable names of the Borel model: u<s> on the subdiagonal, u<s>_<t> for
/// s < t, and t<k> on the torus.
std::string borel_u(int s, int t);
std::string borel_t(int k);

/// Lower-triangular x = x_- x_0 in SL_{n+1}. Entry (t+1, s) of x_- (1-based)
/// is u_{s,t}; x_0 = diag(t_1, ..., t_{n+1}).
class BorelElement {
public:
    /// Throws std::invalid_argument unless the matrix is square, lower
    /// triangular with nonzero diagonal and determinant 1.
    explicit BorelElement(RationalMatrix m);

    static BorelElement identity(int n);
    /// Builds x from u/t coordinates; throws UnboundVariable for a missing one.
    static BorelElement from_coordinates(int n, const Assignment& coords);

    int n() const { return static_cast<int>(m_.rows()) - 1; }
    const RationalMatrix& matrix() const { return m_; }
    Rational t(int k) const;
    Rational u(int s, int t) const;
    /// The unipotent factor x_-.
    RationalMatrix unipotent() const;
    Assignment coordinates() const;

    nlohmann::json to_json() const;
    static BorelElement from_json(const nlohmann::json& j);

private:
    RationalMatrix m_;
};

BorelElement borel_multiply(const BorelElement& x, const BorelElement& y);

/// Symbolic x with entries over the u/t variables.
SymMatrix borel_symbolic_matrix(int n);

}  // namespace geocrystal
