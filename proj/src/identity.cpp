#include "geocrystal/identity.hpp"

#include <stdexcept>

#include "geocrystal/error.hpp"

namespace geocrystal {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::equal: return "equal";
        case Outcome::counterexample: return "counterexample";
        case Outcome::not_applicable: return "not_applicable";
    }
    return "?";
}

Verdict test_identity(const SampleSpec& spec, const TestOptions& opts, const SideFunction& sides) {
    if (opts.trials < 1) throw std::invalid_argument("identity test needs at least one trial");
    Rng rng(opts.seed);
    Verdict verdict;
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        std::size_t attempts = 0;
        while (true) {
            Assignment point = sample_point(spec, rng);
            Sides s;
            try {
                s = sides(point);
            } catch (const DivisionByZero&) {
                ++verdict.resamples;
                if (++attempts > opts.retries)
                    throw DomainTooThin("no pole-free point after " + std::to_string(opts.retries) + " retries");
                continue;
            }
            if (s.lhs.size() != s.rhs.size()) throw std::logic_error("identity sides differ in length");
            for (std::size_t k = 0; k < s.lhs.size(); ++k) {
                if (s.lhs[k] != s.rhs[k]) {
                    verdict.outcome = Outcome::counterexample;
                    verdict.trials = trial + 1;
                    verdict.witness =
                        Counterexample{std::move(point), k < s.labels.size() ? s.labels[k] : std::to_string(k),
                                       s.lhs[k], s.rhs[k]};
                    return verdict;
                }
            }
            break;
        }
    }
    verdict.trials = opts.trials;
    return verdict;
}

Verdict identical_on_domain(const Expr& lhs, const Expr& rhs, const SampleSpec& spec, const TestOptions& opts) {
    return test_identity(spec, opts, [&](const Assignment& p) {
        Evaluator ev(p);
        Sides s;
        s.push(ev(lhs), ev(rhs));
        return s;
    });
}

}  // namespace geocrystal
