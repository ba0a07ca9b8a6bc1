#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geocrystal/error.hpp"
#include "geocrystal/expr_io.hpp"
#include "geocrystal/harness.hpp"
#include "geocrystal/serialize.hpp"
#include "geocrystal/tropical_r.hpp"
#include "geocrystal/trop_expr.hpp"
#include "geocrystal/ud.hpp"

using namespace geocrystal;
using nlohmann::json;

namespace {

// "1,4/3" or a JSON array of numbers / "p/q" strings
std::vector<std::string> split_values(const std::string& text) {
    std::vector<std::string> out;
    if (!text.empty() && text.front() == '[') {
        for (const auto& v : json::parse(text)) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        out.push_back(item);
    }
    return out;
}

Point parse_point(const std::string& text, int n) {
    Point p;
    for (const auto& v : split_values(text)) p.push_back(Rational::parse(v));
    if (static_cast<int>(p.size()) != n + 1)
        throw std::invalid_argument("expected " + std::to_string(n + 1) + " coordinates, got " + std::to_string(p.size()));
    return p;
}

IntPoint parse_int_point(const std::string& text) {
    IntPoint p;
    for (const auto& v : split_values(text)) p.push_back(std::stoll(v));
    return p;
}

json to_json(const Point& p) {
    json a = json::array();
    for (const auto& v : p) a.push_back(v.str());
    return a;
}

Rational product(const Point& p) {
    Rational r = 1;
    for (const auto& v : p) r *= v;
    return r;
}

std::string describe(const CheckResult& r) {
    std::string line = std::string(status_name(r.status)) + "  " + r.check_id;
    if (r.counterexample) line += "  [" + r.counterexample->component + ": " + r.counterexample->lhs.str() +
                                  " != " + r.counterexample->rhs.str() + "]";
    if (r.status == Status::error || r.status == Status::not_applicable) line += "  (" + r.note + ")";
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of geometric crystals, epsilon systems and the tropical R map"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification suite; exit status 0 iff every check passes");
    std::string suite;
    int n = 0;
    std::string L, M, N, a, b, model = "all", json_out;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool timing = false, quiet = false;
    verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--n", n, "Rank (default: the suite's standard sizes)");
    verify->add_option("--L", L, "Level of the first factor (p/q)");
    verify->add_option("--M", M, "Level of the second factor (p/q)");
    verify->add_option("--N", N, "Level of the third factor (p/q)");
    verify->add_option("--a", a, "Uniqueness probe: L = a^(n+1)");
    verify->add_option("--b", b, "Uniqueness probe: M = b^(n+1)");
    verify->add_option("--trials", trials, "Sample points per check");
    verify->add_option("--seed", seed, "Override the suite's fixed seed");
    verify->add_option("--model", model, "Model filter for verma, axioms, epsilon")
        ->check(CLI::IsMember({"all", "bl", "d5", "borel"}));
    verify->add_option("--json", json_out, "Write the JSON report to this file ('-' for stdout)");
    verify->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
    verify->add_flag("--timing", timing, "Include elapsed times in the JSON report");
    verify->add_flag("--quiet", quiet, "Only print failures and the summary");

    // rmap
    auto* rmap = app.add_subcommand("rmap", "Tropical R map");
    rmap->require_subcommand(1);
    auto* rmap_apply = rmap->add_subcommand("apply", "Apply R to (l, m); prints JSON");
    std::string lt, mt;
    int rn = 0;
    rmap_apply->add_option("--n", rn, "Rank")->required();
    rmap_apply->add_option("--l", lt, "Point of B_L: \"1,4\" or [\"1\",\"4\"]")->required();
    rmap_apply->add_option("--m", mt, "Point of B_M")->required();
    auto* rmap_probe = rmap->add_subcommand("probe", "Fixed point and uniqueness report at the homogeneous point");
    std::string pa = "2", pb = "3";
    int pn = 2;
    rmap_probe->add_option("--n", pn, "Rank");
    rmap_probe->add_option("--a", pa, "L = a^(n+1)");
    rmap_probe->add_option("--b", pb, "M = b^(n+1)");

    // ud
    auto* ud = app.add_subcommand("ud", "Ultra-discretization");
    ud->require_subcommand(1);
    auto* trop = ud->add_subcommand("trop", "Tropicalize a subtraction-free expression");
    std::string expr_text;
    bool min_plus = false, trop_json = false;
    trop->add_option("--expr", expr_text, "Expression in the DSL")->required();
    trop->add_flag("--min", min_plus, "Use (min,+) instead of (max,+)");
    trop->add_flag("--json", trop_json, "Print the tree form");
    auto* ud_rmap = ud->add_subcommand("rmap", "Apply the combinatorial R to integer tuples; prints JSON");
    std::string ul, um;
    bool ud_min = false;
    ud_rmap->add_option("--l", ul, "Integer tuple \"0,2,1\"")->required();
    ud_rmap->add_option("--m", um, "Integer tuple")->required();
    ud_rmap->add_flag("--min", ud_min, "Use (min,+)");

    // model
    auto* model_cmd = app.add_subcommand("model", "Built-in models");
    model_cmd->require_subcommand(1);
    auto* show = model_cmd->add_subcommand("show", "Print a model");
    std::string model_name, model_level = "1";
    int model_n = 2;
    bool model_json = false;
    show->add_option("name", model_name, "bl, d5 or borel")->required()->check(CLI::IsMember({"bl", "d5", "borel"}));
    show->add_option("--n", model_n, "Rank (bl, borel)");
    show->add_option("--L", model_level, "Level (bl, d5)");
    show->add_flag("--json", model_json, "Print the JSON manifest");

    auto* ledger = app.add_subcommand("ledger", "Print the identity ledger as markdown");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            SuiteParams p;
            if (verify->count("--n")) p.n = n;
            if (!L.empty()) p.L = Rational::parse(L);
            if (!M.empty()) p.M = Rational::parse(M);
            if (!N.empty()) p.N = Rational::parse(N);
            if (!a.empty()) p.a = Rational::parse(a);
            if (!b.empty()) p.b = Rational::parse(b);
            if (verify->count("--trials")) p.trials = trials;
            if (verify->count("--seed")) p.seed = seed;
            p.model = model;
            const SuiteReport rep = run_suite(suite, p, threads);
            const bool to_stdout = json_out == "-";
            std::ostream& log = to_stdout ? std::cerr : std::cout;
            for (const auto& r : rep.results)
                if (!quiet || r.status == Status::fail || r.status == Status::error) log << describe(r) << "\n";
            log << suite << ": " << rep.results.size() << " checks, " << rep.count(Status::pass) << " pass, "
                << rep.count(Status::fail) << " fail, " << rep.count(Status::error) << " error, "
                << rep.count(Status::not_applicable) << " not applicable (seed " << rep.seed << ", " << rep.trials
                << " trials)\n";
            if (to_stdout) {
                std::cout << rep.to_json(timing).dump(2) << "\n";
            } else if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) throw std::runtime_error("cannot write " + json_out);
                out << rep.to_json(timing).dump(2) << "\n";
            }
            return rep.passed() ? 0 : 1;
        }
        if (rmap_apply->parsed()) {
            const Point l = parse_point(lt, rn), m = parse_point(mt, rn);
            const auto [lo, mo] = apply_R(l, m);
            std::cout << json{{"l", to_json(lo)}, {"m", to_json(mo)},
                              {"level_l", product(lo).str()}, {"level_m", product(mo).str()}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        if (rmap_probe->parsed()) {
            const UniquenessReport r = uniqueness_probe(pn, Rational::parse(pa), Rational::parse(pb));
            std::cout << json{{"n", r.n},
                              {"a", r.a.str()},
                              {"b", r.b.str()},
                              {"fixed_point_holds", r.fixed_point_holds},
                              {"P", r.p.str()},
                              {"l_solution", to_json(r.l_solution)},
                              {"m_solution", to_json(r.m_solution)},
                              {"forced", r.forced},
                              {"perturbations", r.perturbations},
                              {"perturbations_rejected", r.perturbations_rejected},
                              {"steps", r.steps},
                              {"assumption", r.assumption}}
                             .dump(2)
                      << "\n";
            return r.passed() ? 0 : 1;
        }
        if (trop->parsed()) {
            std::vector<std::string> warnings;
            const TropExpr t =
                tropicalize(parse_expr(expr_text), min_plus ? Semiring::min_plus : Semiring::max_plus, &warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            std::cout << (trop_json ? to_json(t).dump(2) : to_string(t)) << "\n";
            return 0;
        }
        if (ud_rmap->parsed()) {
            const auto [lo, mo] =
                combinatorial_R(parse_int_point(ul), parse_int_point(um), ud_min ? Semiring::min_plus : Semiring::max_plus);
            std::cout << json{{"l", lo}, {"m", mo}}.dump(2) << "\n";
            return 0;
        }
        if (show->parsed()) {
            const CrystalModel m = builtin_model(model_name, model_n, Rational::parse(model_level));
            if (model_json) {
                std::cout << model_to_json(m).dump(2) << "\n";
            } else {
                std::cout << m.name << "\nvariables:";
                for (const auto& v : m.variables) std::cout << " " << v;
                std::cout << "\n";
                for (int i : m.cartan.labels) {
                    std::cout << "gamma_" << i << " = " << to_string(m.gamma_of(i)) << "\n";
                    std::cout << "eps_" << i << " = " << to_string(m.eps_of(i)) << "\n";
                }
            }
            return 0;
        }
        if (ledger->parsed()) {
            std::cout << emit_ledger();
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
