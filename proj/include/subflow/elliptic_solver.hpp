#pragma once

#include <array>
#include <string>
#include <vector>

#include "subflow/bernoulli_profile.hpp"
#include "subflow/gas.hpp"
#include "subflow/geometry.hpp"
#include "subflow/grid.hpp"
#include "subflow/linear_solver.hpp"

namespace subflow {

/// Sonic truncation: zeta(s) = s below -theta0/4, the constant -theta0/8 above
/// -theta0/8, and a monotone C^1 cubic in between.
struct TruncationParams {
  double theta0 = 0.0;

  double zeta(double s) const;
  double zeta_slope(double s) const;
  /// Width of the blending band.
  double zeta_width() const { return theta0 / 8.0; }
};

/// zeta(q2 - sigma2) + sigma2; never exceeds sigma2 - theta0 / 8.
double truncate_speed(const TruncationParams& trunc, double q2, double sigma2);

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 500;
  double relax = 0.7;
  double linear_tol = 1e-12;
  int linear_max_iter = 0;  ///< 0 selects a size-dependent default
};

/// Discrete stream function with the metadata of the solve that produced it.
struct StreamField {
  Grid grid;
  NodalField psi;
  double t = 0.0;
  double theta0 = 0.0;
  int iterations = 0;
  long linear_iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;
  /// max of |grad psi|^2 - Sigma^2(B(psi)) over nodes and quadrature points.
  double margin = 0.0;
  /// max over quadrature points of H^2 c^2 / (H^2 c^2 - M).
  double ellipticity_ratio = 1.0;
  bool converged = false;
  bool near_sonic = false;
  std::string message;
};

/// Geometry of the shear map at the 2 x 2 Gauss points of every cell.
///
/// Cell (i, j) spans nodes i..i+1 and j..j+1; its points are numbered
/// q = a + 2 b with local coordinates (s_a, t_b).
class QuadratureMesh {
 public:
  struct Point {
    double x1;
    double x2;
    double e;        ///< d(eta)/d(x1)
    double inv_gap;  ///< d(eta)/d(x2)
    double weight;   ///< gap * hxi * heta / 4
  };

  QuadratureMesh(const Grid& grid, const NozzleGeometry& geom);

  const Grid& grid() const { return grid_; }
  const NozzleGeometry& geometry() const { return geom_; }
  std::size_t cells() const { return static_cast<std::size_t>(grid_.nx) * grid_.ny; }
  std::size_t points() const { return 4 * cells(); }
  std::size_t index(int i, int j, int q) const {
    return 4 * (static_cast<std::size_t>(j) * grid_.nx + static_cast<std::size_t>(i)) + q;
  }
  const Point& point(int i, int j, int q) const { return pts_[index(i, j, q)]; }
  const std::vector<Point>& all() const { return pts_; }

  /// Local coordinate of Gauss abscissa a in {0, 1}.
  static double local(int a);

 private:
  Grid grid_;
  NozzleGeometry geom_;
  std::vector<Point> pts_;
};

/// Values and physical gradient of a nodal field at one quadrature point.
struct PointGradient {
  double value;
  double d1;
  double d2;
};
PointGradient interpolate(const QuadratureMesh& mesh, const NodalField& f, int i, int j, int q);

/// Coefficient a = 1 / rho and right-hand side f of div(a grad psi) = f,
/// frozen at the quadrature points.
struct FrozenCoefficients {
  std::vector<double> a;
  std::vector<double> rhs;
};

/// Bilinear interpolation of nodal density and right-hand side.
FrozenCoefficients coefficients_from_nodal(const QuadratureMesh& mesh, const NodalField& rho,
                                           const NodalField& rhs);

/// Weak residual sum_cells int a grad psi . grad N + f N at every node,
/// including the wall rows.
NodalField weak_residual(const QuadratureMesh& mesh, const FrozenCoefficients& c,
                         const NodalField& psi);

/// Stiffness matrix restricted to the interior rows j = 1..ny-1.
StencilMatrix assemble(const QuadratureMesh& mesh, const std::vector<double>& a);

struct LinearSolveResult {
  NodalField psi;
  PcgResult pcg;
};

/// Solves the frozen-coefficient problem with psi = 0 on the lower wall and
/// psi = t on the upper one. `guess`, when given, seeds the iteration.
LinearSolveResult assemble_and_linear_solve(const QuadratureMesh& mesh,
                                            const FrozenCoefficients& c, double t,
                                            double linear_tol = 1e-12,
                                            const NodalField* guess = nullptr);

/// Flux balance per grid column.
///
/// face[k] is the mean horizontal flux int a d1(psi) / hxi over the strip
/// between columns k and k+1, load[k] the integral of f against the column
/// hat function, and wall[k] the weak residual at the two wall nodes of
/// column k. For a discrete solution
///   face[k-1] - face[k] + load[k] = wall[k].
struct ColumnFluxes {
  std::vector<double> face;
  std::vector<double> load;
  std::vector<double> wall;
};
ColumnFluxes column_fluxes(const QuadratureMesh& mesh, const FrozenCoefficients& c,
                           const NodalField& psi);

/// Picard iteration for div(grad psi / rho~) = rho~ B~'(psi) with the sonic
/// truncation; psi = 0 on the lower wall and t on the upper one.
StreamField picard_solve(const Grid& grid, const NozzleGeometry& geom, const GasModel& gas,
                         const BernoulliProfile& B, double t, const TruncationParams& trunc,
                         const SolverOptions& opts, const NodalField* initial = nullptr);

/// Same on a prebuilt mesh.
StreamField picard_solve(const QuadratureMesh& mesh, const GasModel& gas,
                         const BernoulliProfile& B, double t, const TruncationParams& trunc,
                         const SolverOptions& opts, const NodalField* initial = nullptr);

/// Truncated density rho~ = H(M~, B~(psi)) at every quadrature point.
std::vector<double> truncated_density(const QuadratureMesh& mesh, const GasModel& gas,
                                      const BernoulliProfile& B, const TruncationParams& trunc,
                                      const NodalField& psi);

}  // namespace subflow
