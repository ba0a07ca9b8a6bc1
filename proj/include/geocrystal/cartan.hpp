#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace geocrystal {

/// Generalized Cartan matrix with integer labels. Row/column k of `a`
/// belongs to labels[k].
struct CartanData {
    std::string type;
    std::vector<int> labels;
    Eigen::MatrixXi a;

    /// A_n with labels 1..n.
    static CartanData finite_A(int n);
    /// A_n^(1) with labels 0..n, cyclic. For n = 1 the off-diagonal entries are -2.
    static CartanData affine_A(int n);
    /// D_5^(1), labels 0..5: 0-2, 1-2, 2-3, 3-4, 3-5.
    static CartanData affine_D5();

    /// Throws ModelError unless a_ii = 2, off-diagonals are <= 0 and
    /// a_ij = 0 exactly when a_ji = 0.
    void validate() const;

    bool has(int label) const;
    std::size_t index(int label) const;  // throws ModelError for unknown labels
    int operator()(int i, int j) const { return a(int(index(i)), int(index(j))); }

    /// True iff consecutive chain entries are joined by -1 both ways and all
    /// other pairs are orthogonal, i.e. the chain spans a type A sub-diagram.
    bool is_type_A_chain(const std::vector<int>& chain) const;

    friend bool operator==(const CartanData& x, const CartanData& y) {
        return x.labels == y.labels && x.a == y.a;
    }
};

}  // namespace geocrystal
