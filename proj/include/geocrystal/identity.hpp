#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geocrystal/expr.hpp"
#include "geocrystal/sampling.hpp"

namespace geocrystal {

/// Both sides of a sampled identity, compared component by component.
struct Sides {
    std::vector<Rational> lhs;
    std::vector<Rational> rhs;
    std::vector<std::string> labels;  // optional, one per component

    void push(Rational l, Rational r, std::string label = {}) {
        lhs.push_back(std::move(l));
        rhs.push_back(std::move(r));
        labels.push_back(std::move(label));
    }
};

struct Counterexample {
    Assignment point;
    std::string component;
    Rational lhs;
    Rational rhs;
};

enum class Outcome { equal, counterexample, not_applicable };

const char* outcome_name(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::equal;
    std::size_t trials = 0;
    std::size_t resamples = 0;
    std::optional<Counterexample> witness;
    std::string note;

    bool passed() const { return outcome != Outcome::counterexample; }

    static Verdict not_applicable(std::string why) {
        Verdict v;
        v.outcome = Outcome::not_applicable;
        v.note = std::move(why);
        return v;
    }
};

/// Sampled identity test options. `retries` bounds consecutive pole hits
/// (DivisionByZero) before a trial gives up with DomainTooThin.
struct TestOptions {
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t retries = 100;
};

using SideFunction = std::function<Sides(const Assignment&)>;

/// Draws `opts.trials` points from `spec`, evaluates `sides` at each and
/// reports the first exact mismatch. A point where `sides` throws
/// DivisionByZero is discarded and redrawn.
Verdict test_identity(const SampleSpec& spec, const TestOptions& opts, const SideFunction& sides);

Verdict identical_on_domain(const Expr& lhs, const Expr& rhs, const SampleSpec& spec, const TestOptions& opts);

}  // namespace geocrystal
