// Runs every acceptance criterion at full size and prints one line per
// criterion. Exit status is nonzero if any criterion misses.
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "geocrystal/harness.hpp"

using namespace geocrystal;

namespace {

struct Criterion {
    std::string name;
    std::string suite;
    SuiteParams params;
    double bound_s;
    std::size_t min_trials;
    std::vector<std::string> required;  // check id prefixes that must be present
};

SuiteParams with_model(const std::string& model) {
    SuiteParams p;
    p.model = model;
    return p;
}

std::vector<Criterion> criteria() {
    return {
        {"verma relations on B_L, n = 1..3", "verma", with_model("bl"), 30, 100,
         {"verma/BL1", "verma/BL2", "verma/BL3"}},
        {"axioms ii and iv on B_L, D5 and Borel", "axioms", {}, 60, 100,
         {"axiom-ii/BL3", "axiom-iv/BL3", "axiom-ii/D5", "axiom-iv/D5", "axiom-ii/Borel4", "axiom-iv/Borel4"}},
        {"epsilon systems on Borel n <= 4 and both D5 chains", "epsilon", {}, 120, 100,
         {"eps-partition/Borel4", "eps-well-defined/Borel4", "eps-recurrence/Borel4", "eps-partition/D5[0234]",
          "eps-partition/D5[0235]"}},
        {"Borel x Borel product against matrix multiplication", "borel-oracle", {}, 120, 100,
         {"borel-prod-eps/Borel4", "borel-prod-action/Borel4", "borel-prod-functions/Borel4"}},
        {"R map relations and Yang-Baxter, n = 1..3", "rmap", {}, 120, 100,
         {"r1/BL1", "r2/BL2", "r3/BL3", "r4-yang-baxter/BL1", "r4-yang-baxter/BL3"}},
        {"epsilon invariance under R, n = 2, 3", "invariance", {}, 60, 100,
         {"inv-eps/BL2", "inv-eps/BL3", "inv-eps-star-adjacent/BL3"}},
        {"uniqueness probe at L = a^(n+1), M = b^(n+1)", "uniqueness", {}, 10, 0,
         {"uniq-fixed-point", "uniq-forced", "uniq-perturbation", "uniq-prehomogeneity"}},
        {"ultra-discrete shadows on integer points", "ud", {}, 30, 1000,
         {"ud-axiom-ii", "ud-axiom-iv", "ud-r1", "ud-r4-yang-baxter", "ud-tensor-dichotomy", "ud-prod-eps"}},
    };
}

bool has_prefix(const SuiteReport& rep, const std::string& prefix) {
    for (const auto& r : rep.results)
        if (r.check_id.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

int main() {
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria()) {
        ++index;
        std::string why;
        double seconds = 0;
        try {
            const auto start = std::chrono::steady_clock::now();
            const SuiteReport rep = run_suite(c.suite, c.params);
            seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (!rep.passed())
                why = std::to_string(rep.count(Status::fail)) + " fail, " + std::to_string(rep.count(Status::error)) +
                      " error";
            else if (rep.trials < c.min_trials)
                why = "only " + std::to_string(rep.trials) + " trials";
            else if (seconds >= c.bound_s)
                why = "over the time bound";
            for (const auto& p : c.required)
                if (why.empty() && !has_prefix(rep, p)) why = "missing " + p;
            if (why.empty() && c.suite == "uniqueness") {
                for (const auto& r : rep.results)
                    if (r.kind == "uniq-prehomogeneity" && r.status != Status::not_applicable)
                        why = "prehomogeneity not reported as assumed";
            }
            if (why.empty())
                why = std::to_string(rep.results.size()) + " checks, " + std::to_string(rep.count(Status::pass)) +
                      " pass, " + std::to_string(rep.count(Status::not_applicable)) + " n/a";
            else
                ++failures;
        } catch (const std::exception& e) {
            why = std::string("threw: ") + e.what();
            ++failures;
        }
        const bool ok = why.find(" checks, ") != std::string::npos;
        std::printf("[%s] %d. %s (%s): %.2f s of %.0f s; %s\n", ok ? "PASS" : "FAIL", index, c.name.c_str(),
                    c.suite.c_str(), seconds, c.bound_s, why.c_str());
    }
    std::printf("%d of %d criteria pass\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
