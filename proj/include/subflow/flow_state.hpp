#pragma once

#include <vector>

#include "subflow/bernoulli_profile.hpp"
#include "subflow/elliptic_solver.hpp"
#include "subflow/gas.hpp"
#include "subflow/geometry.hpp"
#include "subflow/grid.hpp"

namespace subflow {

/// Density, velocity and Mach number reconstructed from a stream function.
struct FlowState {
  Grid grid;
  NodalField rho;
  NodalField u;
  NodalField v;
  NodalField mach;
  /// Horizontal momentum rho u on the vertical faces (i, j + 1/2), j = 0..ny-1,
  /// stored row-major as face_momentum[j * nx + i].
  std::vector<double> face_momentum;
  /// Length of the section x1 = xi(i) for every column.
  std::vector<double> section_gap;
  /// int rho u dx2 over every column section.
  std::vector<double> mass_flux_by_section;
  /// max over nodes of q^2 - c^2.
  double subsonic_margin = 0.0;
  double min_u = 0.0;
  double max_mach = 0.0;

  double face(int i, int j) const {
    return face_momentum[static_cast<std::size_t>(j) * grid.nx + grid.wrap(i)];
  }
};

/// rho = H(M~, B(psi)) with M~ the truncated |grad psi|^2, u = d2 psi / rho,
/// v = -d1 psi / rho.
FlowState reconstruct_flow(const StreamField& stream, const NozzleGeometry& geom,
                           const GasModel& gas, const BernoulliProfile& B);

/// Recomputes the section fluxes from the face momenta.
void update_section_fluxes(FlowState& flow);

}  // namespace subflow
