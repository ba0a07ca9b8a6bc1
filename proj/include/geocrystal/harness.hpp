#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geocrystal/identity.hpp"
#include "geocrystal/rational.hpp"

namespace geocrystal {

/// One family of checks. Every CheckResult names its kind; the ledger has one
/// row per kind.
struct CheckKind {
    std::string id;
    std::string suite;
    std::string identity;  // short name of the identity
    std::string formula;   // the relation in plain notation
};

const std::vector<CheckKind>& check_registry();
/// Throws std::out_of_range for an unknown id.
const CheckKind& check_kind(const std::string& id);

const std::vector<std::string>& suite_names();

struct SuiteParams {
    std::optional<int> n;               // unset: the suite's default sizes
    Rational L = Rational(3, 2);
    Rational M = 5;
    Rational N = Rational(7, 3);
    Rational a = 2;                     // uniqueness: L = a^{n+1}, M = b^{n+1}
    Rational b = 3;
    std::optional<std::size_t> trials;  // unset: 100, or 1000 for ud
    std::optional<std::uint64_t> seed;  // unset: the suite's fixed default
    std::string model = "all";          // all | bl | d5 | borel (verma, axioms, epsilon)
};

enum class Status { pass, fail, not_applicable, error };

const char* status_name(Status s);

struct CheckResult {
    std::string suite;
    std::string check_id;
    std::string kind;
    Status status = Status::pass;
    std::size_t trials = 0;
    std::size_t resamples = 0;
    std::optional<Counterexample> counterexample;
    std::string note;
    double elapsed_ms = 0;
};

struct SuiteReport {
    std::string suite;
    SuiteParams params;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<CheckResult> results;  // sorted by check_id
    double elapsed_ms = 0;

    bool passed() const;
    std::size_t count(Status s) const;
    /// Timing fields are omitted unless `timing`, so reports are reproducible.
    nlohmann::json to_json(bool timing = false) const;
};

std::uint64_t default_seed(const std::string& suite);

/// Throws std::invalid_argument for an unknown suite, an unknown model filter
/// or sizes outside n <= 4 (affine models) and n <= 6 (Borel).
/// `threads` = 0 uses the hardware concurrency.
SuiteReport run_suite(const std::string& name, const SuiteParams& params = {}, unsigned threads = 0);

/// One scheduled check: `run` receives the suite's trial count and a seed
/// derived from the suite seed and `kind/id`.
struct PlannedCheck {
    std::string kind;
    std::string id;  // unique within the suite; the check id is kind + "/" + id
    std::function<Verdict(const TestOptions&)> run;
};

/// Runs `checks` in parallel and collects every result; a failing or throwing
/// check never stops the others. Exceptions become Status::error.
SuiteReport run_checks(const std::string& suite, const std::vector<PlannedCheck>& checks, const SuiteParams& params,
                       unsigned threads = 0);

/// Markdown table (check id | identity | formula | suite) built from the registry.
std::string emit_ledger();

nlohmann::json to_json(const Counterexample& c);

}  // namespace geocrystal
