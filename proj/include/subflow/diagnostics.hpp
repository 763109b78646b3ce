#pragma once

#include <optional>
#include <vector>

#include "subflow/bernoulli_profile.hpp"
#include "subflow/elliptic_solver.hpp"
#include "subflow/euler_fixed_point.hpp"
#include "subflow/flow_state.hpp"
#include "subflow/gas.hpp"
#include "subflow/geometry.hpp"

namespace subflow {

/// max over sections of |flux - m| / m, using the face momenta of the flow.
double check_conservation(const FlowState& flow, const NozzleGeometry& geom, double m);

struct BernoulliCheck {
  /// sup over nodes of |(u^2 + v^2) / 2 + h(rho) - B(psi)|.
  double composition = 0.0;
  /// sup over the inflow section of |(u^2 + v^2) / 2 + h(rho) - B0(x2)|.
  double inflow = 0.0;
};

BernoulliCheck check_bernoulli_transport(const FlowState& flow, const StreamField& stream,
                                         const BernoulliDatum& B0, const BernoulliProfile& B,
                                         const GasModel& gas);

struct VorticityCheck {
  /// sup over interior nodes of |omega - (v d1 B - u d2 B) / q^2|.
  double residual = 0.0;
  /// Interior nodes skipped because q^2 was below the stagnation threshold.
  int stagnation_points = 0;
};

/// Velocity and Bernoulli function are recomputed from psi with fourth-order
/// stencils; omega and the derivatives of B use centered differences.
VorticityCheck check_vorticity_identity(const StreamField& stream, const NozzleGeometry& geom,
                                        const GasModel& gas, const BernoulliProfile& B);

struct QualitativeCheck {
  bool max_principle_ok = false;
  double psi_min = 0.0;
  double psi_max = 0.0;
  double interior_min = 0.0;
  double interior_max = 0.0;
  bool positivity_ok = false;
  double min_u = 0.0;
  double min_d2psi = 0.0;
  bool margin_ok = false;
  double subsonic_margin = 0.0;
};

QualitativeCheck check_qualitative(const StreamField& stream, const FlowState& flow,
                                   const NozzleGeometry& geom, double t);

/// sup |base(i + shift, j) - shifted(i, j)|.
double shifted_difference(const NodalField& base, const NodalField& shifted, int shift);

/// Re-solves the stream problem of `stream` on the window shifted by `shift`
/// columns (from the default initial guess) and compares.
struct PeriodicityCheck {
  double difference = 0.0;
  bool converged = false;
};
PeriodicityCheck check_periodicity(const StreamField& stream, const NozzleGeometry& geom,
                                   const GasModel& gas, const BernoulliProfile& B,
                                   const SolverOptions& opts, int shift);

/// Orders log2(e[k] / e[k+1]) from errors on nested grids n, 2n, 4n, ...
std::vector<double> estimate_order(const std::vector<double>& errors);

struct VerificationReport {
  double mass_flux_dev = 0.0;
  double bernoulli_dev = 0.0;
  double bernoulli_inflow_dev = 0.0;
  double vorticity_dev = 0.0;
  int stagnation_points = 0;
  QualitativeCheck qualitative;
  bool periodic_ok = false;
  double periodic_dev = 0.0;
  std::optional<double> convergence_order;
  bool converged = false;

  /// Mass flux, maximum principle, positivity, subsonic margin and periodicity.
  bool mandatory_passed(double conservation_tol = 1e-10) const;
};

/// Runs every check on a rotational (or potential, with constant B0) solution.
VerificationReport verify_solution(const EulerSolution& sol, const BernoulliDatum& B0,
                                   const GasModel& gas, const NozzleGeometry& geom,
                                   const SolverOptions& opts, double m, int shift = 0);

}  // namespace subflow
