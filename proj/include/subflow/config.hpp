#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subflow/bernoulli_profile.hpp"
#include "subflow/critical_flux.hpp"
#include "subflow/elliptic_solver.hpp"
#include "subflow/euler_fixed_point.hpp"
#include "subflow/gas.hpp"
#include "subflow/geometry.hpp"
#include "subflow/grid.hpp"

namespace subflow {

/// Fully validated run description.
///
/// Text format: `key = value` lines, `# comments`, optional `[section]`
/// headers that prefix the following keys (`[gas]` then `gamma = 2` sets
/// `gas.gamma`). Values are numbers, bare or quoted strings, or lists
/// `[a, b, c]`.
struct RunConfig {
  GasModel gas = GasModel::polytropic(2.0, 0.5);
  NozzleGeometry geometry = NozzleGeometry::flat_channel();
  double mass_flux = 0.0;
  BernoulliDatum B0 = BernoulliDatum::constant(0.0);
  std::optional<double> Bbar;
  double eps_warn = 0.1;

  int nx = 64;
  int ny = 64;
  SolverOptions solver;
  double theta0_frac = 0.5;
  FixedPointOptions fixed_point;

  std::vector<double> sweep_m;
  double critical_delta = 0.02;
  double critical_bracket_tol = 1e-3;
  double critical_m_start = 0.0;
  int critical_max_probes = 200;

  std::string output_path;
  std::string output_format = "csv";

  /// Normalized text the configuration was parsed from (for hashing).
  std::string source;

  Grid grid(int shift = 0) const { return Grid(nx, ny, geometry.period(), shift); }
  double reference_bernoulli() const { return Bbar.value_or(B0.value(0.0)); }
  EulerOptions euler_options() const;
  SweepOptions sweep_options(int threads) const;
  CriticalOptions critical_options() const;
};

struct ConfigIssue {
  int line = 0;  ///< 0 when the issue is not tied to a line
  std::string message;
};

/// Either a configuration or every problem found in the text.
struct ConfigParse {
  std::optional<RunConfig> config;
  std::vector<ConfigIssue> errors;
};

ConfigParse parse_config_checked(std::string_view text);

/// Throws ConfigError listing every problem, one per line.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

/// 64-bit FNV-1a of the configuration source.
std::string config_hash(const RunConfig& cfg);

}  // namespace subflow
