#pragma once

#include <json.hpp>

#include "geocrystal/crystal.hpp"

namespace geocrystal {

/// {name, variables, domain: {positive, magnitude, constraints: [{variables, product}]},
///  cartan: {type, labels, matrix}, maps: [{label, gamma, eps, action: {variable: expr}}]}
/// with expressions in the tree form of to_json(Expr).
nlohmann::json model_to_json(const CrystalModel& model);

/// Inverse of model_to_json. Throws ModelError or nlohmann::json::exception on
/// malformed input.
CrystalModel model_from_json(const nlohmann::json& j);

/// Built-in model by name: "bl" (A_n^(1) with level L), "d5" (level L) or
/// "borel" (SL_{n+1}). Throws std::invalid_argument for other names.
CrystalModel builtin_model(const std::string& name, int n, const Rational& level);

}  // namespace geocrystal
