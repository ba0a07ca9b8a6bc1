#include "geocrystal/serialize.hpp"

#include <stdexcept>

#include "geocrystal/error.hpp"
#include "geocrystal/expr_io.hpp"
#include "geocrystal/models.hpp"

namespace geocrystal {

nlohmann::json model_to_json(const CrystalModel& model) {
    using nlohmann::json;
    json constraints = json::array();
    for (const auto& c : model.domain.constraints)
        constraints.push_back({{"variables", c.variables}, {"product", c.product.str()}});
    json matrix = json::array();
    for (Eigen::Index r = 0; r < model.cartan.a.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < model.cartan.a.cols(); ++c) row.push_back(model.cartan.a(r, c));
        matrix.push_back(row);
    }
    json maps = json::array();
    for (int i : model.cartan.labels) {
        json action = json::object();
        const auto& act = model.action_of(i);
        for (std::size_t k = 0; k < act.size(); ++k) action[model.variables[k]] = to_json(act[k]);
        maps.push_back({{"label", i}, {"gamma", to_json(model.gamma_of(i))}, {"eps", to_json(model.eps_of(i))},
                        {"action", action}});
    }
    return {{"name", model.name},
            {"variables", model.variables},
            {"domain", {{"positive", model.domain.positive}, {"magnitude", model.domain.magnitude},
                        {"constraints", constraints}}},
            {"cartan", {{"type", model.cartan.type}, {"labels", model.cartan.labels}, {"matrix", matrix}}},
            {"maps", maps}};
}

CrystalModel model_from_json(const nlohmann::json& j) {
    CrystalModel m;
    m.name = j.at("name").get<std::string>();
    m.variables = j.at("variables").get<std::vector<std::string>>();
    const auto& d = j.at("domain");
    m.domain.variables = m.variables;
    m.domain.positive = d.at("positive").get<bool>();
    m.domain.magnitude = d.at("magnitude").get<std::int64_t>();
    for (const auto& c : d.at("constraints"))
        m.domain.constraints.push_back(
            {c.at("variables").get<std::vector<std::string>>(), Rational::parse(c.at("product").get<std::string>())});
    const auto& cj = j.at("cartan");
    m.cartan.type = cj.at("type").get<std::string>();
    m.cartan.labels = cj.at("labels").get<std::vector<int>>();
    const auto rows = cj.at("matrix").get<std::vector<std::vector<int>>>();
    const auto size = static_cast<Eigen::Index>(m.cartan.labels.size());
    if (static_cast<Eigen::Index>(rows.size()) != size) throw ModelError("Cartan matrix does not match the labels");
    m.cartan.a.resize(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        if (static_cast<Eigen::Index>(rows[r].size()) != size) throw ModelError("Cartan matrix is not square");
        for (Eigen::Index c = 0; c < size; ++c) m.cartan.a(r, c) = rows[r][c];
    }
    for (const auto& entry : j.at("maps")) {
        const int i = entry.at("label").get<int>();
        m.gamma.emplace(i, expr_from_json(entry.at("gamma")));
        m.eps.emplace(i, expr_from_json(entry.at("eps")));
        std::vector<Expr> act;
        for (const auto& v : m.variables) act.push_back(expr_from_json(entry.at("action").at(v)));
        m.action.emplace(i, std::move(act));
    }
    m.cartan.validate();
    m.validate();
    return m;
}

CrystalModel builtin_model(const std::string& name, int n, const Rational& level) {
    if (name == "bl") return model_A_affine(n, level);
    if (name == "d5") return model_D5_affine(level);
    if (name == "borel") return model_Borel(n);
    throw std::invalid_argument("unknown model '" + name + "' (expected bl, d5 or borel)");
}

}  // namespace geocrystal
