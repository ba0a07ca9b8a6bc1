#include <doctest.h>

#include "geocrystal/crystal.hpp"
#include "geocrystal/error.hpp"
#include "geocrystal/serialize.hpp"

using namespace geocrystal;

namespace {

void check_same(const CrystalModel& a, const CrystalModel& b) {
    CHECK(a.name == b.name);
    CHECK(a.variables == b.variables);
    CHECK(a.domain.positive == b.domain.positive);
    CHECK(a.domain.magnitude == b.domain.magnitude);
    REQUIRE(a.domain.constraints.size() == b.domain.constraints.size());
    for (std::size_t k = 0; k < a.domain.constraints.size(); ++k) {
        CHECK(a.domain.constraints[k].variables == b.domain.constraints[k].variables);
        CHECK(a.domain.constraints[k].product == b.domain.constraints[k].product);
    }
    CHECK(a.cartan.type == b.cartan.type);
    CHECK(a.cartan.labels == b.cartan.labels);
    CHECK(a.cartan.a == b.cartan.a);
    for (int i : a.cartan.labels) {
        CHECK(structurally_equal(a.gamma_of(i), b.gamma_of(i)));
        CHECK(structurally_equal(a.eps_of(i), b.eps_of(i)));
        REQUIRE(a.action_of(i).size() == b.action_of(i).size());
        for (std::size_t k = 0; k < a.action_of(i).size(); ++k)
            CHECK(structurally_equal(a.action_of(i)[k], b.action_of(i)[k]));
    }
}

}  // namespace

TEST_CASE("built-in models survive a JSON round trip") {
    for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{{"bl", 1}, {"bl", 3}, {"d5", 0}, {"borel", 3}}) {
        CAPTURE(name);
        CAPTURE(n);
        const CrystalModel m = builtin_model(name, n, Rational(7, 2));
        const auto j = model_to_json(m);
        const CrystalModel back = model_from_json(nlohmann::json::parse(j.dump()));
        check_same(m, back);
        CHECK(model_to_json(back) == j);

        TestOptions opts;
        opts.trials = 10;
        const int i = m.cartan.labels.front();
        const int k = m.cartan.labels.back();
        CHECK(check_axiom_ii(back, i, k, opts).passed());
        CHECK(check_group_law(back, i, opts).passed());
    }
}

TEST_CASE("JSON layout") {
    const auto j = model_to_json(builtin_model("bl", 1, Rational(2)));
    CHECK(j["variables"] == nlohmann::json({"l1", "l2"}));
    CHECK(j["domain"]["constraints"][0]["product"] == "2");
    CHECK(j["cartan"]["matrix"] == nlohmann::json({{2, -2}, {-2, 2}}));
    REQUIRE(j["maps"].size() == 2);
    CHECK(j["maps"][0]["label"] == 0);
    CHECK(j["maps"][0]["action"].contains("l1"));
}

TEST_CASE("malformed models are refused") {
    auto j = model_to_json(builtin_model("bl", 2, Rational(1)));
    auto bad = j;
    bad["cartan"]["matrix"].erase(0);
    CHECK_THROWS_AS(model_from_json(bad), ModelError);
    bad = j;
    bad["maps"][0]["action"].erase("l1");
    CHECK_THROWS_AS(model_from_json(bad), nlohmann::json::exception);
    bad = j;
    bad["domain"]["constraints"][0]["product"] = "one";
    CHECK_THROWS_AS(model_from_json(bad), std::invalid_argument);
    CHECK_THROWS_AS(builtin_model("e8", 1, Rational(1)), std::invalid_argument);
}
