// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "subflow/critical_flux.hpp"
#include "subflow/diagnostics.hpp"
#include "subflow/differencing.hpp"
#include "subflow/euler_fixed_point.hpp"
#include "subflow/gas.hpp"
#include "subflow/log.hpp"

using namespace subflow;

namespace {

constexpr double kPi = std::numbers::pi;

const GasModel kGas = GasModel::polytropic(2.0, 0.5);

NozzleGeometry constricted() {
  FourierSeries f1, f2;
  f2.mean = 1.0;
  f2.sin = {-0.1};
  return NozzleGeometry(1.0, f1, f2);
}

BernoulliDatum sine_datum(double Bbar, double eps, int samples = 1024) {
  std::vector<double> s(samples + 1);
  for (int k = 0; k <= samples; ++k) s[k] = Bbar + eps * std::sin(kPi * k / samples);
  return BernoulliDatum::from_samples(std::move(s));
}

// Constant density of the shear flow: int_0^1 rho sqrt(2 (B0 - rho)) = m.
double shear_density(double eps, double m) {
  auto flux = [&](double rho) {
    const int n = 4000;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double x = static_cast<double>(k) / n;
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      acc += w * std::sqrt(2.0 * (1.5 + eps * std::sin(kPi * x) - rho));
    }
    return rho * acc / (3.0 * n);
  };
  // Subsonic branch: flux decreasing in rho above the critical density.
  double lo = 1.0, hi = 1.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (flux(mid) > m ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double field_distance(const NodalField& a, const NodalField& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    d = std::max(d, std::abs(a.values()[k] - b.values()[k]));
  }
  return d;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Accepted solves of criteria 5-8 whose periodicity is checked at the end.
struct PeriodicityRecord {
  std::string label;
  double difference;
  double tol;
  bool converged;
};
std::vector<PeriodicityRecord> g_periodic;

void record_periodicity(const std::string& label, const EulerSolution& sol,
                        const NozzleGeometry& geom, const SolverOptions& opts) {
  const int shift = std::max(1, sol.stream.grid.nx / 4);
  const PeriodicityCheck p =
      check_periodicity(sol.stream, geom, kGas, sol.Bprofile, opts, shift);
  g_periodic.push_back({label, p.difference, opts.tol, p.converged});
}

EulerOptions tight_options() {
  EulerOptions eo;
  eo.solver.tol = 1e-11;
  eo.fixed_point.tol = 1e-9;
  return eo;
}

Outcome criterion1() {
  Outcome o;
  const CriticalState cs = critical_state(kGas, 1.5);
  o.require(std::abs(cs.rho_crit - 1.0) <= 1e-10 && std::abs(cs.rho_max - 1.5) <= 1e-10 &&
                std::abs(cs.sigma - 1.0) <= 1e-10,
            "ladder " + fmt("%.12g", cs.rho_crit) + "/" + fmt("%.12g", cs.rho_max) + "/" +
                fmt("%.12g", cs.sigma));
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> us(0.2, 4.0), uf(0.0, 1.0);
  double worst = 0.0;
  int sign_failures = 0;
  for (int k = 0; k < 1000; ++k) {
    const double s = us(rng);
    const double M = uf(rng) * 0.999 * sigma_squared(kGas, s);
    const double rho = subsonic_density(kGas, M, s);
    worst = std::max(worst, std::abs(kGas.enthalpy(rho) + M / (2.0 * rho * rho) - s));
    const SubsonicPartials p = subsonic_density_partials(kGas, M, s);
    if (!(p.d_dM < 0.0 && p.d_ds > 0.0)) ++sign_failures;
  }
  o.require(worst <= 1e-12, "bernoulli residual " + fmt("%.2e", worst));
  o.require(sign_failures == 0, "sign failures " + std::to_string(sign_failures));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const Grid g(32, 32, 1.0);
  const PotentialSolution pot =
      solve_potential(kGas, NozzleGeometry::flat_channel(), g, 1.5, 0.5, SolverOptions{});
  double err = 0.0;
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      err = std::max(err, std::abs(pot.stream.psi(i, j) - 0.5 * g.eta(j)));
    }
  }
  o.require(pot.stream.converged, "converged");
  o.require(err <= 1e-10, "Linf " + fmt("%.2e", err));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Grid g(16, 8, 1.0);
  for (double Bbar : {1.5, 3.0}) {
    const double target = critical_state(kGas, Bbar).sigma;
    const CriticalResult r =
        find_critical(kGas, NozzleGeometry::flat_channel(), g, Bbar, CriticalOptions{});
    const double width = (r.m_hi - r.m_lo) / r.m_hi;
    const bool brackets = r.m_lo <= target * (1.0 + 1e-3) && r.m_hi >= target * (1.0 - 1e-3);
    bool increasing = !r.sequence.empty();
    for (std::size_t k = 1; k < r.sequence.size(); ++k) {
      increasing = increasing && r.sequence[k].max_mach > r.sequence[k - 1].max_mach;
    }
    const double top = r.sequence.empty() ? 0.0 : r.sequence.back().max_mach;
    const std::string tag = "B=" + fmt("%.1f", Bbar);
    o.require(r.bracket_converged && width <= 1e-3 && brackets,
              tag + " [" + fmt("%.6f", r.m_lo) + "," + fmt("%.6f", r.m_hi) + "] vs " +
                  fmt("%.6f", target));
    o.require(increasing && top >= 0.98, tag + " mach " + fmt("%.4f", top));
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const NozzleGeometry noz = constricted();
  const Grid g(32, 32, 1.0);
  std::vector<double> ms;
  for (int k = 1; k <= 8; ++k) ms.push_back(0.08 * k);
  const auto rows = sweep(kGas, noz, g, 1.5, ms, SweepOptions{});
  bool all = true, strict = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    all = all && rows[k].converged && !rows[k].near_sonic;
    if (k > 0) strict = strict && rows[k].max_mach > rows[k - 1].max_mach;
  }
  o.require(all, "all accepted");
  o.require(strict, "mach " + fmt("%.4f", rows.front().max_mach) + ".." +
                        fmt("%.4f", rows.back().max_mach));
  const CriticalResult r = find_critical(kGas, noz, g, 1.5, CriticalOptions{});
  o.require(r.bracket_converged && r.m_hi < 1.0,
            "bracket [" + fmt("%.5f", r.m_lo) + "," + fmt("%.5f", r.m_hi) + "]");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const double rho_star = shear_density(0.01, 0.5);
  const NozzleGeometry flat = NozzleGeometry::flat_channel();
  const EulerOptions eo = tight_options();
  std::vector<double> errors;
  for (int n : {32, 64, 128}) {
    const Grid g(n, n, 1.0);
    const EulerSolution sol = solve_euler(kGas, flat, g, sine_datum(1.5, 0.01), 0.5, eo);
    double err = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double u = std::sqrt(2.0 * (1.5 + 0.01 * std::sin(kPi * g.eta(j)) - rho_star));
      for (int i = 0; i < n; ++i) {
        err = std::max({err, std::abs(sol.flow.rho(i, j) - rho_star),
                        std::abs(sol.flow.u(i, j) - u), std::abs(sol.flow.v(i, j))});
      }
    }
    errors.push_back(err);
    o.require(sol.converged && sol.T_residual <= 1e-8,
              "n=" + std::to_string(n) + " T_res " + fmt("%.1e", sol.T_residual) + " err " +
                  fmt("%.2e", err));
    record_periodicity("shear n=" + std::to_string(n), sol, flat, eo.solver);
  }
  for (double p : estimate_order(errors)) o.require(p >= 1.9, "order " + fmt("%.2f", p));
  return o;
}

Outcome criterion6() {
  Outcome o;
  const NozzleGeometry noz = constricted();
  const EulerOptions eo = tight_options();
  const double m = 0.5;
  const BernoulliDatum B0 = sine_datum(1.5, 0.01);
  std::vector<double> composition, inflow, vort;
  for (int n : {64, 128, 256}) {
    const Grid g(n, n, 1.0);
    const EulerSolution sol = solve_euler(kGas, noz, g, B0, m, eo);
    const std::string tag = "n=" + std::to_string(n);
    const double flux_dev = check_conservation(sol.flow, noz, m);
    const BernoulliCheck b = check_bernoulli_transport(sol.flow, sol.stream, B0, sol.Bprofile, kGas);
    const VorticityCheck w = check_vorticity_identity(sol.stream, noz, kGas, sol.Bprofile);
    const QualitativeCheck q = check_qualitative(sol.stream, sol.flow, noz, m);
    composition.push_back(b.composition);
    inflow.push_back(b.inflow);
    vort.push_back(w.residual);
    o.require(sol.converged, tag + " converged");
    o.require(flux_dev <= 1e-10, tag + " flux " + fmt("%.1e", flux_dev));
    o.require(q.max_principle_ok && q.positivity_ok && q.margin_ok,
              tag + " min u " + fmt("%.3f", q.min_u) + " margin " +
                  fmt("%.3f", q.subsonic_margin));
    record_periodicity("nozzle " + tag, sol, noz, eo.solver);
  }
  // Bernoulli function evaluated on streamlines: exact up to round-off, or
  // converging at the required order.
  const double comp_max = *std::max_element(composition.begin(), composition.end());
  if (comp_max <= 1e-12) {
    o.require(true, "B(psi) exact " + fmt("%.1e", comp_max));
  } else {
    for (double p : estimate_order(composition)) o.require(p >= 1.5, "B order " + fmt("%.2f", p));
  }
  for (double p : estimate_order(inflow)) o.require(p >= 1.5, "inflow B order " + fmt("%.2f", p));
  for (std::size_t k = 0; k < vort.size(); ++k) {
    o.require(true, "vort " + fmt("%.2e", vort[k]));
  }
  for (double p : estimate_order(vort)) o.require(p >= 1.5, "vort order " + fmt("%.2f", p));
  return o;
}

Outcome criterion7() {
  Outcome o;
  const NozzleGeometry noz = constricted();
  const Grid g(32, 32, 1.0);
  const BernoulliDatum B0 = sine_datum(1.5, 0.01);
  EulerOptions eo = tight_options();
  eo.fixed_point.tol = 1e-8;
  std::vector<EulerSolution> runs;
  for (double damping : {0.5, 1.0}) {
    for (InitialProfile init : {InitialProfile::potential, InitialProfile::uniform}) {
      eo.fixed_point.damping = damping;
      eo.fixed_point.init = init;
      runs.push_back(solve_euler(kGas, noz, g, B0, 0.5, eo));
      record_periodicity("path", runs.back(), noz, eo.solver);
    }
  }
  double d = 0.0;
  bool conv = true;
  for (const auto& r : runs) {
    conv = conv && r.converged;
    d = std::max({d, field_distance(r.stream.psi, runs[0].stream.psi),
                  field_distance(r.flow.rho, runs[0].flow.rho),
                  field_distance(r.flow.u, runs[0].flow.u),
                  field_distance(r.flow.v, runs[0].flow.v)});
  }
  o.require(conv, "converged");
  o.require(d <= 10.0 * eo.fixed_point.tol, "max field difference " + fmt("%.2e", d));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const NozzleGeometry noz = constricted();
  const Grid g(32, 32, 1.0);
  const EulerOptions eo = tight_options();
  std::vector<double> ratios;
  for (double eps : {1e-2, 5e-3, 2.5e-3}) {
    const EulerSolution sol = solve_euler(kGas, noz, g, sine_datum(1.5, eps), 0.5, eo);
    const NodalGradient a = physical_gradient(sol.stream.psi, g, noz, Stencil::diagnostic);
    const NodalGradient b =
        physical_gradient(sol.potential.stream.psi, g, noz, Stencil::diagnostic);
    double d = 0.0;
    for (std::size_t k = 0; k < a.d1.values().size(); ++k) {
      d = std::max(d, std::hypot(a.d1.values()[k] - b.d1.values()[k],
                                 a.d2.values()[k] - b.d2.values()[k]));
    }
    ratios.push_back(d / eps);
    o.require(sol.converged, "eps " + fmt("%.4g", eps) + " ratio " + fmt("%.4f", d / eps));
    record_periodicity("eps", sol, noz, eo.solver);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  o.require(std::isfinite(*hi) && *hi <= 1.5 * *lo, "spread " + fmt("%.3f", *hi / *lo));
  return o;
}

Outcome criterion9() {
  Outcome o;
  double worst = 0.0;
  int fails = 0;
  for (const auto& p : g_periodic) {
    worst = std::max(worst, p.difference / p.tol);
    if (!(p.converged && p.difference <= 10.0 * p.tol)) {
      ++fails;
      o.require(false, p.label + " " + fmt("%.2e", p.difference));
    }
  }
  o.require(!g_periodic.empty(), std::to_string(g_periodic.size()) + " solves");
  o.require(fails == 0, "worst difference / tol " + fmt("%.2f", worst));
  return o;
}

}  // namespace

int main() {
  set_log_sink([](LogLevel, std::string_view) {});
  struct Criterion {
    int id;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, 1, criterion1},   {2, 5, criterion2},   {3, 120, criterion3},
      {4, 300, criterion4}, {5, 300, criterion5}, {6, 600, criterion6},
      {7, 600, criterion7}, {8, 600, criterion8}, {9, 1e9, criterion9},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s < 1e9) o.require(secs < c.limit_s, "time " + fmt("%.1fs", secs));
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s  %s\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
