#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "commspread/evaluation.hpp"

namespace commspread {

/// Reads an INI experiment description:
///
///   [experiment]
///   output_dir = results
///   measures = community
///   fo_grid = 0.01:0.50:0.01
///   runs = 100
///   seed = 42
///   lambda_multipliers = 0.5,1,2
///
///   [network.eu_airlines]
///   graph = eu_airlines.txt
///   partition = eu_airlines.infomap
///   lcc_only = false
///
/// A network gives either `partition` or `louvain_seed`. Comments take whole
/// lines starting with ';' or '#'. Relative paths resolve against `base_dir`;
/// unknown keys are rejected.
ExperimentSpec parse_experiment_config(std::istream& in, const std::string& base_dir,
                                       const std::string& source_name = "<config>");
ExperimentSpec load_experiment_config(const std::string& path);

/// "a:b:step" inclusive range or "x,y,z" list.
std::vector<double> parse_real_list(std::string_view text);
/// "community" (the seven community-aware measures), "all" (degree plus those
/// seven) or a comma list of measure names.
std::vector<Measure> parse_measure_list(std::string_view text);
CommUndefinedPolicy parse_comm_policy(std::string_view text);

}  // namespace commspread
