#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "subflow/config.hpp"
#include "subflow/critical_flux.hpp"
#include "subflow/diagnostics.hpp"
#include "subflow/error.hpp"
#include "subflow/euler_fixed_point.hpp"
#include "subflow/field_io.hpp"
#include "subflow/flow_state.hpp"

using namespace subflow;

namespace {

struct Args {
  std::string config;
  std::string out;
  int threads = 1;
};

std::string b(bool v) { return v ? "true" : "false"; }

std::string output_path(const Args& a, const RunConfig& c) {
  return a.out.empty() ? c.output_path : a.out;
}

void emit(Metadata& meta, std::string key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
  meta.emplace_back(std::move(key), value);
}

void emit(Metadata& meta, std::string key, double value) {
  emit(meta, std::move(key), format_double(value));
}

void stream_metadata(Metadata& meta, const std::string& command, const RunConfig& c,
                     const StreamField& s) {
  emit(meta, "command", command);
  emit(meta, "config_hash", config_hash(c));
  emit(meta, "nx", std::to_string(s.grid.nx));
  emit(meta, "ny", std::to_string(s.grid.ny));
  emit(meta, "period", s.grid.period);
  emit(meta, "mass_flux", c.mass_flux);
  emit(meta, "theta0", s.theta0);
  emit(meta, "picard_iterations", std::to_string(s.iterations));
  emit(meta, "linear_iterations", std::to_string(s.linear_iterations));
  emit(meta, "residual", s.residual);
  emit(meta, "margin", s.margin);
  emit(meta, "ellipticity_ratio", s.ellipticity_ratio);
  emit(meta, "converged", b(s.converged));
  emit(meta, "near_sonic", b(s.near_sonic));
}

void report_metadata(Metadata& meta, const VerificationReport& r) {
  emit(meta, "mass_flux_dev", r.mass_flux_dev);
  emit(meta, "bernoulli_dev", r.bernoulli_dev);
  emit(meta, "bernoulli_inflow_dev", r.bernoulli_inflow_dev);
  emit(meta, "vorticity_dev", r.vorticity_dev);
  emit(meta, "stagnation_points", std::to_string(r.stagnation_points));
  emit(meta, "psi_min", r.qualitative.psi_min);
  emit(meta, "psi_max", r.qualitative.psi_max);
  emit(meta, "max_principle_ok", b(r.qualitative.max_principle_ok));
  emit(meta, "min_u", r.qualitative.min_u);
  emit(meta, "positivity_ok", b(r.qualitative.positivity_ok));
  emit(meta, "subsonic_margin", r.qualitative.subsonic_margin);
  emit(meta, "margin_ok", b(r.qualitative.margin_ok));
  emit(meta, "periodic_dev", r.periodic_dev);
  emit(meta, "periodic_ok", b(r.periodic_ok));
  emit(meta, "convergence_order",
       r.convergence_order ? format_double(*r.convergence_order) : std::string("n/a"));
}

int solve_potential_cmd(const Args& a) {
  const RunConfig c = load_config(a.config);
  const double Bbar = c.reference_bernoulli();
  if (!c.B0.is_constant()) {
    std::cerr << "note: potential solve uses the constant Bbar = " << Bbar << '\n';
  }
  const PotentialSolution pot = solve_potential(c.gas, c.geometry, c.grid(), Bbar, c.mass_flux,
                                                c.solver, c.theta0_frac);
  const FlowState flow =
      reconstruct_flow(pot.stream, c.geometry, c.gas, BernoulliProfile::constant(Bbar));
  Metadata meta;
  stream_metadata(meta, "solve-potential", c, pot.stream);
  emit(meta, "sigma0", pot.sigma0);
  emit(meta, "sigma1", pot.sigma1);
  emit(meta, "degenerate", b(pot.degenerate));
  emit(meta, "max_mach", flow.max_mach);
  emit(meta, "min_u", flow.min_u);
  if (const std::string path = output_path(a, c); !path.empty()) {
    write_fields(path, pot.stream, flow, c.geometry, meta);
  }
  return pot.stream.converged && !pot.stream.near_sonic ? 0 : 1;
}

int solve_euler_cmd(const Args& a, bool verbose_report, const char* name) {
  const RunConfig c = load_config(a.config);
  const EulerSolution sol =
      solve_euler(c.gas, c.geometry, c.grid(), c.B0, c.mass_flux, c.euler_options());
  Metadata meta;
  stream_metadata(meta, name, c, sol.stream);
  emit(meta, "fixed_point_converged", b(sol.converged));
  emit(meta, "fixed_point_status", sol.status);
  emit(meta, "T_iterations", std::to_string(sol.T_iterations));
  emit(meta, "T_residual", sol.T_residual);
  emit(meta, "damping", sol.damping);
  emit(meta, "eps", sol.eps);
  emit(meta, "max_mach", sol.flow.max_mach);
  const VerificationReport r =
      verify_solution(sol, c.B0, c.gas, c.geometry, c.solver, c.mass_flux);
  report_metadata(meta, r);
  const bool pass = r.mandatory_passed();
  if (verbose_report) emit(meta, "verify", pass ? "pass" : "fail");
  if (const std::string path = output_path(a, c); !path.empty()) {
    write_fields(path, sol.stream, sol.flow, c.geometry, meta);
  }
  return pass ? 0 : 1;
}

int sweep_cmd(const Args& a) {
  const RunConfig c = load_config(a.config);
  if (c.sweep_m.empty()) throw ConfigError("sweep.m_values is required for the sweep command");
  const auto rows = sweep(c.gas, c.geometry, c.grid(), c.reference_bernoulli(), c.sweep_m,
                          c.sweep_options(a.threads));
  std::ostringstream table;
  table << "m,max_mach,margin,converged,near_sonic\n";
  bool ok = true;
  for (const auto& r : rows) {
    table << format_double(r.m) << ',' << format_double(r.max_mach) << ','
          << format_double(r.margin) << ',' << b(r.converged) << ',' << b(r.near_sonic) << '\n';
    ok = ok && r.converged;
  }
  const bool monotone = mach_monotone(rows);
  const std::string path = output_path(a, c);
  if (path.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream out(path);
    out << table.str();
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
  }
  std::cerr << "monotone=" << b(monotone) << '\n';
  return ok && monotone ? 0 : 1;
}

int critical_cmd(const Args& a) {
  const RunConfig c = load_config(a.config);
  const CriticalResult r =
      find_critical(c.gas, c.geometry, c.grid(), c.reference_bernoulli(), c.critical_options());
  std::cout << "m_lo=" << format_double(r.m_lo) << '\n'
            << "m_hi=" << format_double(r.m_hi) << '\n'
            << "probes=" << r.probes.size() << '\n'
            << "best_mach="
            << format_double(r.sequence.empty() ? 0.0 : r.sequence.back().max_mach) << '\n'
            << "bracket_converged=" << b(r.bracket_converged) << '\n'
            << "reached_target=" << b(r.reached_target) << '\n';
  if (const std::string path = output_path(a, c); !path.empty()) {
    std::ofstream out(path);
    out << "m,max_mach,margin,converged,near_sonic,theta0\n";
    for (const auto& p : r.probes) {
      out << format_double(p.m) << ',' << format_double(p.max_mach) << ','
          << format_double(p.margin) << ',' << b(p.converged) << ',' << b(p.near_sonic) << ','
          << format_double(p.theta0) << '\n';
    }
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
  }
  return r.bracket_converged && r.reached_target ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subsonic Euler flows through periodic nozzles"};
  app.require_subcommand(1);
  Args args;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "Configuration file")->required();
    sub->add_option("--out", args.out, "Output path");
    sub->add_option("--threads", args.threads, "Maximum concurrent solves")
        ->check(CLI::PositiveNumber);
    return sub;
  };
  CLI::App* pot = add("solve-potential", "Irrotational flow for the constant Bbar");
  CLI::App* eul = add("solve-euler", "Rotational flow by the inflow fixed point");
  CLI::App* swp = add("sweep", "Max Mach over a list of mass fluxes");
  CLI::App* crit = add("critical", "Bracket the critical mass flux");
  CLI::App* ver = add("verify", "Solve and print the verification report");
  CLI11_PARSE(app, argc, argv);

  try {
    if (pot->parsed()) return solve_potential_cmd(args);
    if (eul->parsed()) return solve_euler_cmd(args, false, "solve-euler");
    if (swp->parsed()) return sweep_cmd(args);
    if (crit->parsed()) return critical_cmd(args);
    if (ver->parsed()) return solve_euler_cmd(args, true, "verify");
  } catch (const ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
