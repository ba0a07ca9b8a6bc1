#include "geocrystal/sampling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "geocrystal/error.hpp"

namespace geocrystal {

void SampleSpec::validate() const {
    if (magnitude < 1) throw std::invalid_argument("sample magnitude must be positive");
    const std::set<std::string> known(variables.begin(), variables.end());
    if (known.size() != variables.size()) throw std::invalid_argument("duplicate variable in sample spec");
    for (const auto& c : constraints) {
        if (c.variables.empty()) throw std::invalid_argument("empty product constraint");
        for (const auto& v : c.variables)
            if (!known.contains(v)) throw std::invalid_argument("constraint names unknown variable '" + v + "'");
        if (c.product.is_zero()) throw std::invalid_argument("constraint product must be nonzero");
        if (positive && c.product.sign() < 0)
            throw std::invalid_argument("positive sampling needs a positive product");
    }
}

SampleSpec merge(const SampleSpec& a, const SampleSpec& b) {
    SampleSpec out = a;
    out.variables.insert(out.variables.end(), b.variables.begin(), b.variables.end());
    out.constraints.insert(out.constraints.end(), b.constraints.begin(), b.constraints.end());
    out.positive = a.positive && b.positive;
    out.magnitude = std::max(a.magnitude, b.magnitude);
    return out;
}

Rational sample_scalar(Rng& rng, std::int64_t magnitude, bool positive) {
    const auto num = rng.uniform(1, magnitude);
    const auto den = rng.uniform(1, magnitude);
    Rational r(static_cast<long>(num), static_cast<long>(den));
    if (!positive && rng.coin()) r = -r;
    return r;
}

namespace {

struct Plan {
    std::vector<std::size_t> order;     // constraint indices, solve order
    std::vector<std::string> pivots;    // pivot per entry of `order`
};

// A constraint can be solved last if it owns a variable no other remaining
// constraint touches. Peel such constraints off from the back.
Plan plan_constraints(const std::vector<ProductConstraint>& constraints) {
    std::vector<std::size_t> remaining;
    for (std::size_t k = 0; k < constraints.size(); ++k) {
        const std::set<std::string> mine(constraints[k].variables.begin(), constraints[k].variables.end());
        bool duplicate = false;
        for (std::size_t r : remaining) {
            const std::set<std::string> other(constraints[r].variables.begin(), constraints[r].variables.end());
            if (other == mine) {
                if (constraints[r].product != constraints[k].product)
                    throw ConstraintConflict("two constraints on the same variables require different products");
                duplicate = true;
            }
        }
        if (!duplicate) remaining.push_back(k);
    }

    Plan plan;
    while (!remaining.empty()) {
        bool progressed = false;
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            const auto& c = constraints[*it];
            for (const auto& v : c.variables) {
                const bool exclusive = std::none_of(remaining.begin(), remaining.end(), [&](std::size_t r) {
                    return r != *it && std::find(constraints[r].variables.begin(), constraints[r].variables.end(),
                                                 v) != constraints[r].variables.end();
                });
                if (exclusive) {
                    plan.order.push_back(*it);
                    plan.pivots.push_back(v);
                    remaining.erase(it);
                    progressed = true;
                    break;
                }
            }
            if (progressed) break;
        }
        if (!progressed) throw ConstraintConflict("product constraints overlap with no free pivot");
    }
    std::reverse(plan.order.begin(), plan.order.end());
    std::reverse(plan.pivots.begin(), plan.pivots.end());
    return plan;
}

}  // namespace

Assignment sample_point(const SampleSpec& spec, Rng& rng) {
    spec.validate();
    const Plan plan = plan_constraints(spec.constraints);
    const std::set<std::string> pivots(plan.pivots.begin(), plan.pivots.end());

    Assignment point;
    for (const auto& v : spec.variables)
        if (!pivots.contains(v)) point.emplace(v, sample_scalar(rng, spec.magnitude, spec.positive));

    for (std::size_t k = 0; k < plan.order.size(); ++k) {
        const auto& c = spec.constraints[plan.order[k]];
        Rational others = 1;
        for (const auto& v : c.variables)
            if (v != plan.pivots[k]) others *= point.at(v);
        point[plan.pivots[k]] = c.product / others;
    }
    return point;
}

Assignment sample_point(const SampleSpec& spec) {
    Rng rng(spec.seed);
    return sample_point(spec, rng);
}

}  // namespace geocrystal
