#include "subflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subflow/differencing.hpp"

namespace subflow {

double check_conservation(const FlowState& flow, const NozzleGeometry& geom, double m) {
  (void)geom;
  double dev = 0.0;
  for (double f : flow.mass_flux_by_section) dev = std::max(dev, std::abs(f - m) / m);
  FlowState copy = flow;
  update_section_fluxes(copy);
  for (double f : copy.mass_flux_by_section) dev = std::max(dev, std::abs(f - m) / m);
  return dev;
}

BernoulliCheck check_bernoulli_transport(const FlowState& flow, const StreamField& stream,
                                         const BernoulliDatum& B0, const BernoulliProfile& B,
                                         const GasModel& gas) {
  const Grid& g = flow.grid;
  BernoulliCheck out;
  auto field = [&](int i, int j) {
    const double u = flow.u(i, j);
    const double v = flow.v(i, j);
    return 0.5 * (u * u + v * v) + gas.enthalpy(flow.rho(i, j));
  };
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      out.composition = std::max(out.composition, std::abs(field(i, j) - B.value(stream.psi(i, j))));
    }
  }
  const int ic = g.inflow_column();
  for (int j = 0; j <= g.ny; ++j) {
    out.inflow = std::max(out.inflow, std::abs(field(ic, j) - B0.value(g.eta(j))));
  }
  return out;
}

VorticityCheck check_vorticity_identity(const StreamField& stream, const NozzleGeometry& geom,
                                        const GasModel& gas, const BernoulliProfile& B) {
  const Grid& g = stream.grid;
  const NodalGradient grad = physical_gradient(stream.psi, g, geom, Stencil::trace);
  NodalField u(g), v(g), Bf(g), q2(g);
  double q2max = 0.0;
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double s = B.value(stream.psi(i, j));
      const double sigma2 = sigma_squared(gas, s);
      const double M = grad.d1(i, j) * grad.d1(i, j) + grad.d2(i, j) * grad.d2(i, j);
      const double rho = subsonic_density(gas, std::min(M, sigma2), s);
      u(i, j) = grad.d2(i, j) / rho;
      v(i, j) = -grad.d1(i, j) / rho;
      q2(i, j) = u(i, j) * u(i, j) + v(i, j) * v(i, j);
      Bf(i, j) = 0.5 * q2(i, j) + gas.enthalpy(rho);
      q2max = std::max(q2max, q2(i, j));
    }
  }
  const NodalGradient du = physical_gradient(u, g, geom, Stencil::diagnostic);
  const NodalGradient dv = physical_gradient(v, g, geom, Stencil::diagnostic);
  const NodalGradient dB = physical_gradient(Bf, g, geom, Stencil::diagnostic);
  VorticityCheck out;
  for (int j = 1; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (q2(i, j) < 1e-12 * q2max || q2max == 0.0) {
        ++out.stagnation_points;
        continue;
      }
      const double omega = dv.d1(i, j) - du.d2(i, j);
      const double rhs = (v(i, j) * dB.d1(i, j) - u(i, j) * dB.d2(i, j)) / q2(i, j);
      out.residual = std::max(out.residual, std::abs(omega - rhs));
    }
  }
  return out;
}

QualitativeCheck check_qualitative(const StreamField& stream, const FlowState& flow,
                                   const NozzleGeometry& geom, double t) {
  const Grid& g = stream.grid;
  QualitativeCheck c;
  c.psi_min = stream.psi.min();
  c.psi_max = stream.psi.max();
  c.interior_min = std::numeric_limits<double>::infinity();
  c.interior_max = -std::numeric_limits<double>::infinity();
  for (int j = 1; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      c.interior_min = std::min(c.interior_min, stream.psi(i, j));
      c.interior_max = std::max(c.interior_max, stream.psi(i, j));
    }
  }
  c.max_principle_ok =
      c.psi_min >= 0.0 && c.psi_max <= t && c.interior_min > 0.0 && c.interior_max < t;

  const NodalGradient grad = physical_gradient(stream.psi, g, geom, Stencil::diagnostic);
  c.min_d2psi = std::numeric_limits<double>::infinity();
  for (int j = 1; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) c.min_d2psi = std::min(c.min_d2psi, grad.d2(i, j));
  }
  c.min_u = flow.min_u;
  c.positivity_ok = c.min_u > 0.0 && c.min_d2psi > 0.0;
  c.subsonic_margin = flow.subsonic_margin;
  c.margin_ok = flow.subsonic_margin < 0.0 && !stream.near_sonic;
  return c;
}

double shifted_difference(const NodalField& base, const NodalField& shifted, int shift) {
  const NodalField ref = shift_columns(base, shift);
  double d = 0.0;
  for (std::size_t k = 0; k < ref.values().size(); ++k) {
    d = std::max(d, std::abs(ref.values()[k] - shifted.values()[k]));
  }
  return d;
}

PeriodicityCheck check_periodicity(const StreamField& stream, const NozzleGeometry& geom,
                                   const GasModel& gas, const BernoulliProfile& B,
                                   const SolverOptions& opts, int shift) {
  const Grid& g = stream.grid;
  const Grid moved(g.nx, g.ny, g.period, g.shift + shift);
  const StreamField other =
      picard_solve(moved, geom, gas, B, stream.t, TruncationParams{stream.theta0}, opts);
  return {shifted_difference(stream.psi, other.psi, shift), other.converged};
}

std::vector<double> estimate_order(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    out.push_back(std::log2(errors[k] / errors[k + 1]));
  }
  return out;
}

bool VerificationReport::mandatory_passed(double conservation_tol) const {
  return converged && mass_flux_dev <= conservation_tol && qualitative.max_principle_ok &&
         qualitative.positivity_ok && qualitative.margin_ok && periodic_ok;
}

VerificationReport verify_solution(const EulerSolution& sol, const BernoulliDatum& B0,
                                   const GasModel& gas, const NozzleGeometry& geom,
                                   const SolverOptions& opts, double m, int shift) {
  VerificationReport r;
  const Grid& g = sol.stream.grid;
  r.converged = sol.converged && sol.stream.converged;
  r.mass_flux_dev = check_conservation(sol.flow, geom, m);
  const BernoulliCheck b = check_bernoulli_transport(sol.flow, sol.stream, B0, sol.Bprofile, gas);
  r.bernoulli_dev = b.composition;
  r.bernoulli_inflow_dev = b.inflow;
  const VorticityCheck w = check_vorticity_identity(sol.stream, geom, gas, sol.Bprofile);
  r.vorticity_dev = w.residual;
  r.stagnation_points = w.stagnation_points;
  r.qualitative = check_qualitative(sol.stream, sol.flow, geom, m);
  if (shift <= 0) shift = std::max(1, g.nx / 4);
  const PeriodicityCheck p = check_periodicity(sol.stream, geom, gas, sol.Bprofile, opts, shift);
  r.periodic_dev = p.difference;
  r.periodic_ok = p.converged && p.difference <= 10.0 * opts.tol;
  return r;
}

}  // namespace subflow
