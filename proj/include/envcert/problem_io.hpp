#pragma once

#include "envcert/problem.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace envcert {

/// Reads a problem document:
///   {"dynamics": ["x2", "u1"], "dt": "1/10",
///    "state_box": [["-1","1"], ...], "input_box": [["-1","1"]],
///    "disturbance": ["1/10"], "envelope": {"c": [...], "G": [[...]]},
///    "X0": {"c": [...], "G": [[...]]}, "config": {"picard.order": "2"},
///    "numbers": "dyadic"}
/// States are x1..xn, inputs u1..um, disturbances w1..wq. Numbers given as
/// strings are read exactly; JSON number literals are converted by
/// `numbers` (dyadic by default, or cfrac). `overrides` are key=value config
/// assignments applied after the file's own config.
/// Throws ParseError or Malformed.
ProblemSpec problem_from_json(const nlohmann::json& doc, const std::vector<std::string>& overrides = {});
ProblemSpec load_problem(const std::string& path, const std::vector<std::string>& overrides = {});

nlohmann::json read_json_file(const std::string& path);

}  // namespace envcert
