#pragma once

#include "subflow/geometry.hpp"
#include "subflow/grid.hpp"

namespace subflow {

/// Difference stencils for nodal derivatives on the computational grid.
enum class Stencil {
  /// Centered second order inside, three-point one-sided at the walls.
  solver,
  /// Centered second order inside, five-point fourth-order one-sided at the walls.
  diagnostic,
  /// Fourth order everywhere (centered, skewed next to the walls, one-sided on them).
  trace,
};

double d_xi(const NodalField& f, const Grid& g, int i, int j, Stencil s);
double d_eta(const NodalField& f, const Grid& g, int i, int j, Stencil s);

/// Physical gradient (d/dx1, d/dx2) at every node.
struct NodalGradient {
  NodalField d1;
  NodalField d2;
};

NodalGradient physical_gradient(const NodalField& f, const Grid& grid, const NozzleGeometry& geom,
                                Stencil s);

/// Chain-rule factors of the shear map at a node: d/dx1 = d/dxi + e d/deta,
/// d/dx2 = inv_gap d/deta.
struct ShearFactors {
  double e;
  double inv_gap;
};
ShearFactors shear_factors(const NozzleGeometry& geom, double xi, double eta);

}  // namespace subflow
