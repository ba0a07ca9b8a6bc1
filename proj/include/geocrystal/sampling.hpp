#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geocrystal/random.hpp"
#include "geocrystal/rational.hpp"

namespace geocrystal {

/// Variable name -> exact value. Ordered so reports are stable.
using Assignment = std::map<std::string, Rational>;

struct ProductConstraint {
    std::vector<std::string> variables;
    Rational product;
};

/// Describes how to draw random evaluation points.
///
/// Unconstrained variables are drawn as +-p/q with 1 <= p, q <= magnitude.
/// For each product constraint one variable (the pivot) is solved for
/// after all others in its subset are fixed, so the constraint holds exactly.
struct SampleSpec {
    std::vector<std::string> variables;
    bool positive = true;
    std::vector<ProductConstraint> constraints;
    std::int64_t magnitude = 1000;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if a constraint names an unknown variable
    /// or requires a zero (or, under `positive`, a non-positive) product.
    void validate() const;

    SampleSpec& add_free(const std::string& name) {
        variables.push_back(name);
        return *this;
    }
};

/// Concatenates two specs (variables and constraints). Positivity is the
/// conjunction; magnitude is the larger one.
SampleSpec merge(const SampleSpec& a, const SampleSpec& b);

Rational sample_scalar(Rng& rng, std::int64_t magnitude, bool positive);

/// Draws one point from `spec` using `rng`. Throws ConstraintConflict when the
/// constraints cannot be solved pivot-by-pivot.
Assignment sample_point(const SampleSpec& spec, Rng& rng);

/// Convenience: a fresh generator seeded with spec.seed.
Assignment sample_point(const SampleSpec& spec);

}  // namespace geocrystal
