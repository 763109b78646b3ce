#include "subflow/differencing.hpp"

namespace subflow {

double d_xi(const NodalField& f, const Grid& g, int i, int j, Stencil s) {
  const double h = g.hxi();
  if (s == Stencil::trace) {
    return (f(i - 2, j) - 8.0 * f(i - 1, j) + 8.0 * f(i + 1, j) - f(i + 2, j)) / (12.0 * h);
  }
  return (f(i + 1, j) - f(i - 1, j)) / (2.0 * h);
}

double d_eta(const NodalField& f, const Grid& g, int i, int j, Stencil s) {
  const double k = g.heta();
  const int ny = g.ny;
  // Mirror the top wall onto the bottom one: derivative flips sign.
  auto one_sided = [&](int j0, int dir) {
    auto v = [&](int m) { return f(i, j0 + dir * m); };
    double d;
    if (s == Stencil::solver) {
      d = (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * k);
    } else {
      d = (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) / (12.0 * k);
    }
    return dir * d;
  };
  if (j == 0) return one_sided(0, +1);
  if (j == ny) return one_sided(ny, -1);
  if (s == Stencil::trace) {
    if (j == 1) {
      return (-3.0 * f(i, 0) - 10.0 * f(i, 1) + 18.0 * f(i, 2) - 6.0 * f(i, 3) + f(i, 4)) /
             (12.0 * k);
    }
    if (j == ny - 1) {
      return -(-3.0 * f(i, ny) - 10.0 * f(i, ny - 1) + 18.0 * f(i, ny - 2) -
               6.0 * f(i, ny - 3) + f(i, ny - 4)) /
             (12.0 * k);
    }
    return (f(i, j - 2) - 8.0 * f(i, j - 1) + 8.0 * f(i, j + 1) - f(i, j + 2)) / (12.0 * k);
  }
  return (f(i, j + 1) - f(i, j - 1)) / (2.0 * k);
}

ShearFactors shear_factors(const NozzleGeometry& geom, double xi, double eta) {
  const double g = geom.gap(xi);
  const double dlo = geom.wall_eval(Wall::lower, xi, 1);
  const double dg = geom.gap(xi, 1);
  return {-(dlo + eta * dg) / g, 1.0 / g};
}

NodalGradient physical_gradient(const NodalField& f, const Grid& grid, const NozzleGeometry& geom,
                                Stencil s) {
  NodalGradient out{NodalField(grid), NodalField(grid)};
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const ShearFactors sf = shear_factors(geom, grid.xi(i), grid.eta(j));
      const double fx = d_xi(f, grid, i, j, s);
      const double fe = d_eta(f, grid, i, j, s);
      out.d1(i, j) = fx + sf.e * fe;
      out.d2(i, j) = sf.inv_gap * fe;
    }
  }
  return out;
}

}  // namespace subflow
