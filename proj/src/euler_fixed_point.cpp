#include "subflow/euler_fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subflow/differencing.hpp"
#include "subflow/error.hpp"
#include "subflow/log.hpp"

namespace subflow {

TruncationParams potential_truncation(const GasModel& gas, double Bbar, double theta0_frac) {
  return {theta0_frac * 0.5 * sigma_squared(gas, Bbar)};
}

PotentialSolution solve_potential(const GasModel& gas, const NozzleGeometry& geom,
                                  const Grid& grid, double Bbar, double m,
                                  const SolverOptions& opts, double theta0_frac,
                                  const NodalField* initial) {
  gas.require_admissible_bernoulli(Bbar);
  return solve_potential(gas, geom, grid, Bbar, m, opts,
                         potential_truncation(gas, Bbar, theta0_frac), initial);
}

PotentialSolution solve_potential(const GasModel& gas, const NozzleGeometry& geom,
                                  const Grid& grid, double Bbar, double m,
                                  const SolverOptions& opts, const TruncationParams& trunc,
                                  const NodalField* initial) {
  if (!(m >= 0.0)) throw DomainError("mass flux must be nonnegative");
  gas.require_admissible_bernoulli(Bbar);
  PotentialSolution out;
  out.Bbar = Bbar;
  out.mass_flux = m;
  out.stream = picard_solve(grid, geom, gas, BernoulliProfile::constant(Bbar), m, trunc, opts,
                            initial);
  out.degenerate = (m == 0.0);

  const NodalGradient grad = physical_gradient(out.stream.psi, grid, geom, Stencil::diagnostic);
  out.sigma0 = grad.d2.min();
  out.sigma1 = 0.0;
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      out.sigma1 = std::max(out.sigma1, std::hypot(grad.d1(i, j), grad.d2(i, j)));
    }
  }
  out.inflow_trace = inflow_trace(out.stream, geom);
  if (out.degenerate) out.sigma0 = 0.0;
  return out;
}

std::vector<double> inflow_trace(const StreamField& stream, const NozzleGeometry& geom) {
  const Grid& g = stream.grid;
  const int ic = g.inflow_column();
  const double gap = geom.gap(g.xi(ic));
  std::vector<double> w(g.ny + 1);
  for (int j = 0; j <= g.ny; ++j) w[j] = d_eta(stream.psi, g, ic, j, Stencil::trace) / gap;
  return w;
}

TStep apply_T(const InflowProfile& W, const BernoulliDatum& B0, double Bbar,
              const GasModel& gas, const QuadratureMesh& mesh, const TruncationParams& trunc,
              const SolverOptions& opts, const AdmissibleSet* admissible,
              const NodalField* warm_start) {
  const double m = W.mass_flux();
  BernoulliProfile B = BernoulliProfile::compose_and_extend(B0, W, Bbar, gas);
  StreamField stream = picard_solve(mesh, gas, B, m, trunc, opts, warm_start);
  if (!stream.converged) {
    std::ostringstream os;
    os << "stream solve inside T did not converge (" << stream.message << ", residual "
       << stream.residual << ")";
    throw NonConvergenceError(os.str());
  }
  std::vector<double> trace = inflow_trace(stream, mesh.geometry());
  const double raw = MonotoneCubic(0.0, 1.0, trace).total_integral();
  const double renorm = std::abs(raw - m) / m;

  std::optional<double> sigma0;
  if (admissible) sigma0 = admissible->sigma0;
  InflowProfile TW = InflowProfile::normalized(std::move(trace), m, sigma0);
  if (admissible) {
    const auto s = TW.samples();
    const auto& ref = admissible->potential_trace;
    if (ref.size() != s.size()) throw DomainError("potential trace does not match the grid");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (std::abs(s[k] - ref[k]) > 0.5 * admissible->sigma0) {
        std::ostringstream os;
        os << "T(W) leaves the admissible set at x2 = "
           << static_cast<double>(k) / static_cast<double>(s.size() - 1)
           << " (distance to the potential profile " << std::abs(s[k] - ref[k])
           << " > sigma0/2 = " << 0.5 * admissible->sigma0
           << "); eps is too large for this mass flux";
        throw AdmissibilityError(os.str());
      }
    }
  }
  return {std::move(TW), std::move(stream), std::move(B), renorm};
}

TruncationParams euler_truncation(const GasModel& gas, const BernoulliDatum& B0, double Bbar,
                                  double sigma1, double theta0_frac) {
  const double Bcheck = B0.min();
  gas.require_admissible_bernoulli(Bcheck);
  const double a = 0.5 * sigma_squared(gas, Bcheck);
  const double s1 = 1.1 * sigma1;
  const double b = sigma_squared(gas, Bbar) - s1 * s1;
  if (!(b > 0.0)) {
    throw AdmissibilityError(
        "potential flow is too close to sonic to leave a truncation margin for the rotational "
        "solve");
  }
  return {theta0_frac * std::min(a, b)};
}

namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

EulerSolution solve_euler(const GasModel& gas, const NozzleGeometry& geom, const Grid& grid,
                          const BernoulliDatum& B0, double m, const EulerOptions& opts) {
  if (!(m > 0.0)) throw DomainError("mass flux must be positive");
  const double Bbar = opts.Bbar.value_or(B0.value(0.0));
  const double eps = B0.eps(Bbar);
  if (eps > opts.eps_warn) {
    std::ostringstream os;
    os << "Bernoulli datum deviates from Bbar by eps = " << eps << " (warning threshold "
       << opts.eps_warn << ")";
    log_warning(os.str());
  }

  PotentialSolution pot = solve_potential(gas, geom, grid, Bbar, m, opts.solver, opts.theta0_frac);
  if (!pot.stream.converged) {
    throw NonConvergenceError("potential solve did not converge: " + pot.stream.message);
  }
  if (pot.stream.near_sonic) {
    throw AdmissibilityError("mass flux is at or above the near-sonic threshold of the potential flow");
  }
  const TruncationParams trunc = euler_truncation(gas, B0, Bbar, pot.sigma1, opts.theta0_frac);
  const AdmissibleSet adm{pot.inflow_trace, pot.sigma0};
  const QuadratureMesh mesh(grid, geom);

  std::optional<InflowProfile> W;
  if (opts.fixed_point.init == InitialProfile::potential) {
    W.emplace(InflowProfile::normalized(pot.inflow_trace, m, pot.sigma0));
  } else {
    W.emplace(std::vector<double>(grid.ny + 1, m), m, pot.sigma0);
  }
  const double lambda = opts.fixed_point.damping.value_or(eps < 1e-3 ? 1.0 : 0.5);
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("damping must lie in (0, 1]");

  std::optional<TStep> last;
  std::optional<InflowProfile> last_W;
  std::vector<double> history;
  std::string status;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  for (int k = 0; k < opts.fixed_point.max_iter; ++k) {
    const NodalField* warm = last ? &last->stream.psi : &pot.stream.psi;
    std::optional<TStep> step;
    try {
      step.emplace(apply_T(*W, B0, Bbar, gas, mesh, trunc, opts.solver, &adm, warm));
    } catch (const AdmissibilityError& e) {
      status = std::string("admissibility lost: ") + e.what();
      break;
    } catch (const NonConvergenceError& e) {
      status = e.what();
      break;
    }
    iterations = k + 1;
    residual = sup_distance(step->W.samples(), W->samples());
    history.push_back(residual);
    last = std::move(step);
    last_W = *W;
    if (residual < opts.fixed_point.tol) {
      converged = true;
      status = "converged";
      break;
    }
    std::vector<double> next(W->samples().begin(), W->samples().end());
    const auto tw = last->W.samples();
    for (std::size_t j = 0; j < next.size(); ++j) next[j] = (1.0 - lambda) * next[j] + lambda * tw[j];
    try {
      W.emplace(InflowProfile::normalized(std::move(next), m, pot.sigma0));
    } catch (const AdmissibilityError& e) {
      status = std::string("admissibility lost: ") + e.what();
      break;
    }
  }
  if (!converged && status.empty()) status = "fixed-point iteration limit reached";

  if (!last) {
    // No T-step succeeded: report the potential baseline.
    BernoulliProfile B = BernoulliProfile::constant(Bbar);
    FlowState flow = reconstruct_flow(pot.stream, geom, gas, B);
    StreamField stream = pot.stream;
    return {std::move(stream), std::move(*W), std::move(B), std::move(flow), std::move(pot),
            trunc, 0, residual, std::move(history), lambda, eps, false, status};
  }
  // The returned stream is the solve built from W, so W and the flow belong together.
  FlowState flow = reconstruct_flow(last->stream, geom, gas, last->B);
  return {std::move(last->stream), std::move(*last_W), std::move(last->B), std::move(flow),
          std::move(pot), trunc, iterations, residual, std::move(history), lambda, eps,
          converged, status};
}

}  // namespace subflow
