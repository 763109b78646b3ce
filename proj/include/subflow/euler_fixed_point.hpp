#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subflow/bernoulli_profile.hpp"
#include "subflow/elliptic_solver.hpp"
#include "subflow/flow_state.hpp"
#include "subflow/gas.hpp"
#include "subflow/geometry.hpp"
#include "subflow/grid.hpp"

namespace subflow {

/// Irrotational baseline psi-bar with its gradient bounds.
struct PotentialSolution {
  StreamField stream;
  double Bbar = 0.0;
  double mass_flux = 0.0;
  /// min of d2 psi-bar over nodes.
  double sigma0 = 0.0;
  /// max of |grad psi-bar| over nodes.
  double sigma1 = 0.0;
  /// d2 psi-bar on the inflow section, samples at the nodes of [0, 1].
  std::vector<double> inflow_trace;
  /// True for m = 0, where sigma0 is undefined.
  bool degenerate = false;
};

/// theta0 = frac * Sigma^2(Bbar) / 2.
TruncationParams potential_truncation(const GasModel& gas, double Bbar, double theta0_frac);

PotentialSolution solve_potential(const GasModel& gas, const NozzleGeometry& geom,
                                  const Grid& grid, double Bbar, double m,
                                  const SolverOptions& opts, double theta0_frac = 0.5,
                                  const NodalField* initial = nullptr);

/// Same with an explicit truncation.
PotentialSolution solve_potential(const GasModel& gas, const NozzleGeometry& geom,
                                  const Grid& grid, double Bbar, double m,
                                  const SolverOptions& opts, const TruncationParams& trunc,
                                  const NodalField* initial = nullptr);

/// d2 psi on the inflow section x1 = 0, fourth order in eta.
std::vector<double> inflow_trace(const StreamField& stream, const NozzleGeometry& geom);

/// Reference profile and bound defining the admissible set of inflow profiles.
struct AdmissibleSet {
  std::vector<double> potential_trace;
  double sigma0 = 0.0;
};

struct TStep {
  InflowProfile W;
  StreamField stream;
  BernoulliProfile B;
  /// |int T(W) - m| / m before renormalization.
  double renormalization = 0.0;
};

/// The map W -> d2 psi(0, .) of the solve whose Bernoulli function is built
/// from W and B0. The result is renormalized to carry exactly m and, when
/// `admissible` is given, checked against it (AdmissibilityError otherwise).
TStep apply_T(const InflowProfile& W, const BernoulliDatum& B0, double Bbar,
              const GasModel& gas, const QuadratureMesh& mesh, const TruncationParams& trunc,
              const SolverOptions& opts, const AdmissibleSet* admissible = nullptr,
              const NodalField* warm_start = nullptr);

enum class InitialProfile { potential, uniform };

struct FixedPointOptions {
  double tol = 1e-8;
  int max_iter = 200;
  /// Empty selects 1 for eps < 1e-3 and 0.5 otherwise.
  std::optional<double> damping;
  InitialProfile init = InitialProfile::potential;
};

struct EulerOptions {
  SolverOptions solver;
  FixedPointOptions fixed_point;
  double theta0_frac = 0.5;
  /// Reference constant; defaults to B0(0).
  std::optional<double> Bbar;
  double eps_warn = 0.1;
};

struct EulerSolution {
  StreamField stream;
  InflowProfile profile;
  BernoulliProfile Bprofile;
  FlowState flow;
  PotentialSolution potential;
  TruncationParams truncation;
  int T_iterations = 0;
  double T_residual = 0.0;
  std::vector<double> T_history;
  double damping = 1.0;
  double eps = 0.0;
  bool converged = false;
  std::string status;
};

/// theta0 = frac * min(Sigma^2(min B0) / 2, Sigma^2(Bbar) - (1.1 sigma1)^2).
TruncationParams euler_truncation(const GasModel& gas, const BernoulliDatum& B0, double Bbar,
                                  double sigma1, double theta0_frac);

/// Damped iteration W <- (1 - lambda) W + lambda T(W) to a fixed point, then
/// reconstruction of the flow.
EulerSolution solve_euler(const GasModel& gas, const NozzleGeometry& geom, const Grid& grid,
                          const BernoulliDatum& B0, double m, const EulerOptions& opts);

}  // namespace subflow
