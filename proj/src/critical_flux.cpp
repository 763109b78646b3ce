#include "subflow/critical_flux.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "subflow/error.hpp"
#include "subflow/euler_fixed_point.hpp"
#include "subflow/flow_state.hpp"
#include "subflow/log.hpp"

namespace subflow {

namespace {

SweepRecord sweep_row(const GasModel& gas, const NozzleGeometry& geom, const Grid& grid,
                      double Bbar, double m, const SweepOptions& opts) {
  SweepRecord r;
  r.m = m;
  try {
    const PotentialSolution pot =
        solve_potential(gas, geom, grid, Bbar, m, opts.solver, opts.theta0_frac);
    const FlowState flow =
        reconstruct_flow(pot.stream, geom, gas, BernoulliProfile::constant(Bbar));
    r.max_mach = flow.max_mach;
    r.margin = pot.stream.margin;
    r.converged = pot.stream.converged;
    r.near_sonic = pot.stream.near_sonic;
    r.iterations = pot.stream.iterations;
    r.message = pot.stream.message;
  } catch (const std::exception& e) {
    r.message = e.what();
  }
  return r;
}

}  // namespace

std::vector<SweepRecord> sweep(const GasModel& gas, const NozzleGeometry& geom, const Grid& grid,
                               double Bbar, const std::vector<double>& m_values,
                               const SweepOptions& opts) {
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    if (!(m_values[k] >= 0.0)) throw DomainError("sweep mass fluxes must be nonnegative");
    if (k > 0 && !(m_values[k] > m_values[k - 1])) {
      throw DomainError("sweep mass fluxes must be strictly increasing");
    }
  }
  std::vector<SweepRecord> out(m_values.size());
  const int n = static_cast<int>(m_values.size());
  const int workers = std::clamp(opts.threads, 1, std::max(1, n));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k = next++; k < n; k = next++) {
      out[k] = sweep_row(gas, geom, grid, Bbar, m_values[k], opts);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (!mach_monotone(out)) log_warning("max Mach is not increasing across the sweep");
  return out;
}

bool mach_monotone(const std::vector<SweepRecord>& records) {
  const SweepRecord* prev = nullptr;
  for (const auto& r : records) {
    if (!r.converged || r.near_sonic) continue;
    if (prev && !(r.max_mach - prev->max_mach > -1e-10)) return false;
    prev = &r;
  }
  return true;
}

CriticalResult find_critical(const GasModel& gas, const NozzleGeometry& geom, const Grid& grid,
                             double Bbar, const CriticalOptions& opts) {
  gas.require_admissible_bernoulli(Bbar);
  const double sigma2 = sigma_squared(gas, Bbar);
  const double full_theta = opts.theta0_frac * 0.5 * sigma2;
  const double target = 1.0 - opts.delta;
  CriticalResult res;

  const NodalField* warm = nullptr;
  double warm_m = 0.0;
  NodalField scaled;
  auto probe = [&](double m, double theta0) {
    CriticalProbe p;
    p.m = m;
    p.theta0 = theta0;
    const NodalField* init = nullptr;
    if (warm && warm_m > 0.0) {
      scaled = *warm;
      for (double& v : scaled.values()) v *= m / warm_m;
      init = &scaled;
    }
    PotentialSolution pot = solve_potential(gas, geom, grid, Bbar, m, opts.solver,
                                            TruncationParams{theta0}, init);
    const FlowState flow =
        reconstruct_flow(pot.stream, geom, gas, BernoulliProfile::constant(Bbar));
    p.max_mach = flow.max_mach;
    p.margin = pot.stream.margin;
    p.converged = pot.stream.converged;
    p.near_sonic = pot.stream.near_sonic;
    res.probes.push_back(p);
    if (p.accepted()) {
      res.sequence.push_back({m, p.max_mach, std::move(pot.stream)});
      warm = &res.sequence.back().stream.psi;
      warm_m = m;
    }
    return p;
  };

  double lo = opts.m_start > 0.0 ? opts.m_start : 0.5 * std::sqrt(sigma2) * geom.gap_min();
  if (!probe(lo, full_theta).accepted()) {
    std::ostringstream os;
    os << "no subsonic solve at the initial mass flux " << lo;
    throw ConfigError(os.str());
  }
  double hi = lo;
  for (;;) {
    if (static_cast<int>(res.probes.size()) >= opts.max_probes) {
      res.m_lo = lo;
      res.m_hi = hi;
      return res;
    }
    hi = 1.25 * lo;
    if (!probe(hi, full_theta).accepted()) break;
    lo = hi;
  }

  auto best_mach = [&] { return res.sequence.empty() ? 0.0 : res.sequence.back().max_mach; };
  while (static_cast<int>(res.probes.size()) < opts.max_probes) {
    const double width = hi - lo;
    if (width <= opts.bracket_tol * hi && best_mach() >= target) break;
    if (width < 1e-10 * hi) break;
    const double mid = 0.5 * (lo + hi);
    const double theta0 = full_theta * std::min(1.0, width / hi);
    if (probe(mid, theta0).accepted()) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.m_lo = lo;
  res.m_hi = hi;
  res.bracket_converged = (hi - lo) <= opts.bracket_tol * hi;
  res.reached_target = best_mach() >= target;
  return res;
}

}  // namespace subflow
