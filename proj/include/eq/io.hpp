#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "eq/construct.hpp"
#include "eq/norms.hpp"
#include "eq/solver.hpp"
#include "eq/verify.hpp"

namespace eq {

// Tagged representation: {"kind":"weighted_lp","p":...,"weights":[...]},
// {"kind":"weighted_linf",...}, {"kind":"polytope",...}, {"kind":"composed",...}.
NormSpec norm_from_json(const nlohmann::json& j);
nlohmann::json norm_to_json(const NormSpec& spec);

PointConfig point_config_from_json(const nlohmann::json& j);

// {"gamma": g, "points": [[...],...]} with 17 significant digits, so a
// round trip through text is lossless in double precision.
std::string point_config_to_json_text(const PointConfig& config);

nlohmann::json solve_report_to_json(const SolveReport& report);
nlohmann::json equilateral_report_to_json(const EquilateralReport& report);

}  // namespace eq
