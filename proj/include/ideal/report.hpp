#pragma once

#include <json.hpp>
#include <string>

#include "ideal/deformation.hpp"
#include "ideal/ptb.hpp"
#include "ideal/triangulation.hpp"

namespace ideal {

using nlohmann::json;

json complex_json(Complex z);
Complex complex_from_json(const json& j);
json shapes_json(const std::vector<Complex>& shapes);

json validate_result(const Triangulation& tri);
json solve_result(const EquationSystem& sys, const ShapeAssignment& solution);
json fill_result(const DegenerationReport& rep);
json tangent_result(const EquationSystem& sys, const ShapeAssignment& at, double rank_tol);
json ptb_result(Complex gamma);

/// Top-level envelope: {command, input, tolerances, result, wall_time_s}.
json run_report(const std::string& command, const std::string& input,
                const SolveOptions& opts, json result, double wall_time_s);

}  // namespace ideal
