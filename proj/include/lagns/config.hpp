#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "lagns/gas.hpp"
#include "lagns/grid.hpp"
#include "lagns/profiles.hpp"
#include "lagns/solver.hpp"
#include "lagns/verification.hpp"

namespace lagns {

struct VerifyConfig {
  std::string manufactured = "mms1";
  Refinement refinement = Refinement::Spatial;
  int levels = 4;
  int base_cells = 16;
  double base_dt = 0.02;
  double oracle_dt = 2.5e-4;
  double oracle_ratio = 1e3;
  std::vector<double> lengths{10.0, 20.0, 40.0};
  double interior_fraction = 0.5;
};

/// Everything one invocation needs. Defaults match an empty config file.
struct RunConfig {
  ProblemKind problem{ProblemVariant::Cauchy, 80.0};
  int n_cells = 1600;
  GasParams gas = GasParams::normalized(1.0);
  ProfileSpec profile;
  SchemeConfig scheme;
  double t_end = 1.0;
  int cadence = 1;
  std::string output_dir = "out";
  std::vector<double> p_list{2.0, std::numeric_limits<double>::infinity()};
  int probe_cell = -1;    // -1: middle cell
  int probe_x_cell = -1;  // -1: probe_cell
  bool check_jensen = true;
  VerifyConfig verify;

  ProblemSetup setup() const;
  double dx() const { return problem.truncation_length / n_cells; }
};

/// Parses flat `section.key = value` text. `#` starts a comment.
/// Throws ConfigError carrying the line number for syntax errors, unknown or
/// repeated keys, and malformed values; validation errors carry line 0.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

/// Checks cross-field constraints, including positivity and compatibility of
/// the initial data on the configured grid. Throws ConfigError.
void validate(const RunConfig& config);

/// All recognised keys, in documentation order.
const std::vector<std::string_view>& config_keys();

}  // namespace lagns
