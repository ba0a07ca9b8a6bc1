#include "geocrystal/cartan.hpp"

#include <algorithm>
#include <set>

#include "geocrystal/error.hpp"

namespace geocrystal {

namespace {

CartanData from_edges(std::string type, std::vector<int> labels, const std::vector<std::pair<int, int>>& edges) {
    CartanData d;
    d.type = std::move(type);
    d.labels = std::move(labels);
    const int k = static_cast<int>(d.labels.size());
    d.a = Eigen::MatrixXi::Zero(k, k);
    for (int r = 0; r < k; ++r) d.a(r, r) = 2;
    for (auto [i, j] : edges) {
        d.a(int(d.index(i)), int(d.index(j))) -= 1;
        d.a(int(d.index(j)), int(d.index(i))) -= 1;
    }
    d.validate();
    return d;
}

}  // namespace

CartanData CartanData::finite_A(int n) {
    if (n < 1) throw ModelError("A_n needs n >= 1");
    std::vector<int> labels;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) labels.push_back(i);
    for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
    return from_edges("A" + std::to_string(n), std::move(labels), edges);
}

CartanData CartanData::affine_A(int n) {
    if (n < 1) throw ModelError("A_n^(1) needs n >= 1");
    std::vector<int> labels;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i <= n; ++i) labels.push_back(i);
    // n = 1 has the double edge 0 = 1
    for (int i = 0; i <= n; ++i) edges.emplace_back(i, (i + 1) % (n + 1));
    return from_edges("A" + std::to_string(n) + "^(1)", std::move(labels), edges);
}

CartanData CartanData::affine_D5() {
    return from_edges("D5^(1)", {0, 1, 2, 3, 4, 5}, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}});
}

void CartanData::validate() const {
    const auto k = static_cast<Eigen::Index>(labels.size());
    if (a.rows() != k || a.cols() != k) throw ModelError("Cartan matrix shape does not match labels");
    if (std::set<int>(labels.begin(), labels.end()).size() != labels.size())
        throw ModelError("duplicate Cartan label");
    for (Eigen::Index r = 0; r < k; ++r) {
        if (a(r, r) != 2) throw ModelError("Cartan diagonal must be 2");
        for (Eigen::Index c = 0; c < k; ++c) {
            if (r == c) continue;
            if (a(r, c) > 0) throw ModelError("Cartan off-diagonal must be <= 0");
            if ((a(r, c) == 0) != (a(c, r) == 0)) throw ModelError("Cartan zero pattern must be symmetric");
        }
    }
}

bool CartanData::has(int label) const { return std::find(labels.begin(), labels.end(), label) != labels.end(); }

std::size_t CartanData::index(int label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw ModelError("unknown Cartan label " + std::to_string(label));
    return static_cast<std::size_t>(it - labels.begin());
}

bool CartanData::is_type_A_chain(const std::vector<int>& chain) const {
    if (chain.empty()) return false;
    if (std::set<int>(chain.begin(), chain.end()).size() != chain.size()) return false;
    for (int l : chain)
        if (!has(l)) return false;
    for (std::size_t p = 0; p < chain.size(); ++p)
        for (std::size_t q = p + 1; q < chain.size(); ++q) {
            const int want = q == p + 1 ? -1 : 0;
            if ((*this)(chain[p], chain[q]) != want || (*this)(chain[q], chain[p]) != want) return false;
        }
    return true;
}

}  // namespace geocrystal
