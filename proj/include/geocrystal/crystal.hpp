#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geocrystal/cartan.hpp"
#include "geocrystal/expr.hpp"
#include "geocrystal/identity.hpp"
#include "geocrystal/sampling.hpp"

namespace geocrystal {

/// Name of the action parameter inside action expressions. Reserved: no
/// model variable may use it.
inline const std::string kActionParameter = "c";

/// A geometric crystal given by expression families. action.at(i)[k] is the
/// new value of variables[k] under e_i^c, written over the variables and c.
struct CrystalModel {
    std::string name;
    std::vector<std::string> variables;
    SampleSpec domain;
    CartanData cartan;
    std::map<int, Expr> gamma;
    std::map<int, Expr> eps;
    std::map<int, std::vector<Expr>> action;

    const Expr& gamma_of(int i) const;
    const Expr& eps_of(int i) const;
    const std::vector<Expr>& action_of(int i) const;

    /// Structural checks only (shapes, labels, free variables). The axioms
    /// themselves are verified by the check_* functions.
    void validate() const;
};

/// e_i^c(x). Throws DivisionByZero when x lies on a pole of the action.
Assignment apply_e(const CrystalModel& model, int i, const Rational& c, const Assignment& x);

Rational eval_gamma(const CrystalModel& model, int i, const Assignment& x);
Rational eval_eps(const CrystalModel& model, int i, const Assignment& x);

/// One factor e_label^{c1^p1 c2^p2} of a braid word.
struct WordFactor {
    int label;
    int p1;
    int p2;
};

/// Both sides of a Verma relation, factors listed left to right as written;
/// the rightmost factor acts first.
struct VermaWord {
    int aij = 0;
    int aji = 0;
    std::vector<WordFactor> lhs;
    std::vector<WordFactor> rhs;
};

/// Relation for the pair (i, j), or nullopt when (a_ij, a_ji) is not one of
/// (0,0), (-1,-1), (-2,-1), (-3,-1) or their transposes.
std::optional<VermaWord> verma_word(int aij, int aji, int i, int j);

Assignment apply_word(const CrystalModel& model, const std::vector<WordFactor>& word, const Rational& c1,
                      const Rational& c2, const Assignment& x);

/// Parameters are drawn with the model's positivity flag.
SampleSpec with_parameters(const SampleSpec& domain, const std::vector<std::string>& names);

/// Throws ModelError for an unsupported Cartan pattern.
Verdict check_verma(const CrystalModel& model, int i, int j, const TestOptions& opts);
/// Verma relation evaluated at c1 = c2 = 1 only.
Verdict check_verma_at_one(const CrystalModel& model, int i, int j, const TestOptions& opts);
/// gamma_j(e_i^c x) = c^{a_ij} gamma_j(x).
Verdict check_axiom_ii(const CrystalModel& model, int i, int j, const TestOptions& opts);
/// eps_i(e_i^c x) = c^{-1} eps_i(x) for i = j; eps_i(e_j^c x) = eps_i(x) when
/// a_ij = a_ji = 0. Other pairs are not applicable.
Verdict check_axiom_iv(const CrystalModel& model, int i, int j, const TestOptions& opts);
/// e_i^{c1} e_i^{c2} = e_i^{c1 c2}.
Verdict check_group_law(const CrystalModel& model, int i, const TestOptions& opts);
/// e_i^1 = id.
Verdict check_identity_at_one(const CrystalModel& model, int i, const TestOptions& opts);
/// e_i^c keeps every product constraint of the domain.
Verdict check_domain_preserved(const CrystalModel& model, int i, const TestOptions& opts);

/// Variable renaming used by products: left factor ".x", right factor ".y".
std::string left_name(const std::string& v);
std::string right_name(const std::string& v);

/// The product crystal X x Y. Throws ModelError on a Cartan mismatch.
CrystalModel product(const CrystalModel& x, const CrystalModel& y);

/// (c1, c2) splitting c between the factors, over the product's variables and c.
std::pair<Expr, Expr> tensor_coefficients(const CrystalModel& x, const CrystalModel& y, int i);

/// ((X x Y) x Z) and (X x (Y x Z)) agree on e_i^c, gamma_i, eps_i.
Verdict check_product_associativity(const CrystalModel& x, const CrystalModel& y, const CrystalModel& z, int i,
                                    const TestOptions& opts);

}  // namespace geocrystal
