#pragma once

#include <string>
#include <vector>

#include "subflow/elliptic_solver.hpp"
#include "subflow/gas.hpp"
#include "subflow/geometry.hpp"
#include "subflow/grid.hpp"

namespace subflow {

struct SweepRecord {
  double m = 0.0;
  double max_mach = 0.0;
  double margin = 0.0;
  bool converged = false;
  bool near_sonic = false;
  int iterations = 0;
  std::string message;
};

struct SweepOptions {
  SolverOptions solver;
  double theta0_frac = 0.5;
  /// Upper bound on concurrent solves.
  int threads = 1;
};

/// One potential solve per mass flux. Failures are recorded per row.
std::vector<SweepRecord> sweep(const GasModel& gas, const NozzleGeometry& geom, const Grid& grid,
                               double Bbar, const std::vector<double>& m_values,
                               const SweepOptions& opts);

/// True when max_mach increases (by more than -1e-10) across the converged,
/// non-near-sonic records.
bool mach_monotone(const std::vector<SweepRecord>& records);

struct CriticalOptions {
  SolverOptions solver;
  double theta0_frac = 0.5;
  /// Mach target is 1 - delta.
  double delta = 0.02;
  /// Relative bracket width.
  double bracket_tol = 1e-3;
  /// Initial subsonic mass flux; 0 selects Sigma(Bbar) * gap_min / 2.
  double m_start = 0.0;
  int max_probes = 200;
};

struct CriticalProbe {
  double m = 0.0;
  double theta0 = 0.0;
  double max_mach = 0.0;
  double margin = 0.0;
  bool converged = false;
  bool near_sonic = false;
  bool accepted() const { return converged && !near_sonic; }
};

/// An accepted solve of the subsonic sequence.
struct SequenceEntry {
  double m;
  double max_mach;
  StreamField stream;
};

struct CriticalResult {
  double m_lo = 0.0;
  double m_hi = 0.0;
  std::vector<CriticalProbe> probes;
  /// Accepted solves in increasing m.
  std::vector<SequenceEntry> sequence;
  bool reached_target = false;
  bool bracket_converged = false;
};

/// Brackets the critical mass flux between an accepted subsonic solve and the
/// smallest flux whose solve is near-sonic or fails to converge. Throws
/// ConfigError when the starting flux does not give an accepted solve.
CriticalResult find_critical(const GasModel& gas, const NozzleGeometry& geom, const Grid& grid,
                             double Bbar, const CriticalOptions& opts);

}  // namespace subflow
