#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geocrystal/crystal.hpp"
#include "geocrystal/expr.hpp"
#include "geocrystal/identity.hpp"

namespace geocrystal {

/// [s, t] in chain positions 1..k; empty when s > t.
struct Interval {
    int s;
    int t;
    bool empty() const { return s > t; }
    int size() const { return empty() ? 0 : t - s + 1; }
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Consecutive blocks I_1, ..., I_k covering an interval in order.
using Partition = std::vector<Interval>;

/// All 2^{|J|-1} partitions of a nonempty J, ordered by breakpoint bitmask:
/// bit b set means a block ends at s + b.
std::vector<Partition> enumerate_partitions(Interval j);

/// Interval-indexed table of (eps_J, eps*_J). The chain lists the Cartan
/// labels of a type A sub-diagram in order; intervals refer to positions in
/// it, so position p stands for label chain[p-1].
class EpsilonSystem {
public:
    EpsilonSystem() = default;
    explicit EpsilonSystem(std::vector<int> chain) : chain_(std::move(chain)) {}

    const std::vector<int>& chain() const { return chain_; }
    int size() const { return static_cast<int>(chain_.size()); }
    int label(int position) const;
    /// Position of a label, or 0 if it is not on the chain.
    int position(int label) const;

    void set_eps(Interval j, Expr e);
    void set_eps_star(Interval j, Expr e);

    /// Constant 1 on the empty interval; throws ModelError for a missing entry.
    Expr eps(Interval j) const;
    Expr eps_star(Interval j) const;
    bool has_eps(Interval j) const { return j.empty() || eps_.contains(j); }
    bool has_eps_star(Interval j) const { return j.empty() || eps_star_.contains(j); }

    /// Throws ModelError unless every interval has both entries.
    void require_complete() const;

    /// Every nonempty interval, ordered by (s, t).
    std::vector<Interval> intervals() const;

    /// Applies `f` to every entry (used for variable renaming).
    EpsilonSystem transformed(const std::function<Expr(const Expr&)>& f) const;

    nlohmann::json to_json() const;

private:
    std::vector<int> chain_;
    std::map<Interval, Expr> eps_;
    std::map<Interval, Expr> eps_star_;
};

/// eps_P = product of eps over the blocks of P.
Expr eps_of_partition(const EpsilonSystem& sys, const Partition& p);

/// Partition sum of signed eps_P with sign (-1)^{|J| - l(P)}, written as
/// (sum of positive terms) - (sum of negative terms).
Expr eps_star_from_eps(const EpsilonSystem& sys, Interval j);

/// eps*_{[s,t]} = sum_{j=s}^{t} (-1)^{j-s} eps_{[s,j]} eps*_{[j+1,t]}, using the
/// eps* entries already in the table for shorter intervals.
Expr eps_star_by_recurrence(const EpsilonSystem& sys, Interval j);

/// Fills eps* for every interval from the eps entries via the partition sum.
void complete_by_partition_sum(EpsilonSystem& sys);

/// Free symbols e<s> and e<s>_<t> for eps_J on a chain 1..k, with eps* filled
/// by the partition sum. Used to test the combinatorics without a model.
EpsilonSystem symbolic_system(int k);
std::string symbol_name(Interval j);

/// Restricts `model` to a type A chain of labels and attaches the given
/// table. Throws ModelError if the chain is not type A in the model's Cartan
/// data or a singleton entry disagrees with the model's eps_i.
EpsilonSystem local_epsilon(const CrystalModel& model, const std::vector<int>& chain, const EpsilonSystem& table);

/// Which clause of the action rule applies to e_label on J.
enum class EpsClause {
    scale,        // c^{-1} factor
    invariant,    // unchanged
    right_edge,   // label at position t+1
    left_edge,    // label at position s-1
};
EpsClause eps_clause(const EpsilonSystem& sys, Interval j, int label);
EpsClause eps_star_clause(const EpsilonSystem& sys, Interval j, int label);
const char* clause_name(EpsClause c);

/// eps*_J equals the partition sum of the eps entries, evaluated
/// numerically from the table at each point.
Verdict check_partition_relation(const EpsilonSystem& sys, const CrystalModel& model, Interval j,
                                 const TestOptions& opts);

/// Both alternating sums over j = s-1..t vanish (J = [s,t], s < t); the sign
/// is normalized so that the j = s-1 term is positive.
Verdict check_alternating_identities(const EpsilonSystem& sys, const CrystalModel& model, Interval j,
                                     const TestOptions& opts);

/// eps_J and eps*_J under e_label^c follow their clause, including the edge
/// formulas at positions s-1 and t+1.
Verdict check_epsilon_axiom(const EpsilonSystem& sys, const CrystalModel& model, Interval j, int label,
                            const TestOptions& opts);

/// eps_J and eps*_J agree along both sides of the braid for (i, j).
/// Not applicable unless (a_ij, a_ji) is (0,0) or (-1,-1).
Verdict check_well_defined(const EpsilonSystem& sys, const CrystalModel& model, int i, int j, Interval interval,
                           const TestOptions& opts);

/// eps_{[s-1,s]} + eps*_{[s-1,s]} = eps_{s-1} eps_s for 2 <= s <= k.
Verdict check_adjacent_sum(const EpsilonSystem& sys, const CrystalModel& model, int s, const TestOptions& opts);

/// eps*_J obtained by solving the first alternating relation recursively from
/// the eps entries equals the partition sum.
Verdict check_recurrence_matches_partition(const EpsilonSystem& sys, const CrystalModel& model, Interval j,
                                           const TestOptions& opts);

/// Product system on X x Y (variables renamed with ".x" / ".y"); the gamma
/// factors come from the left factor X.
EpsilonSystem product_epsilon(const EpsilonSystem& ex, const EpsilonSystem& ey, const CrystalModel& x);

}  // namespace geocrystal
