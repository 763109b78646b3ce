#include "subflow/elliptic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "subflow/differencing.hpp"
#include "subflow/error.hpp"
#include "subflow/log.hpp"

namespace subflow {

double TruncationParams::zeta(double s) const {
  const double a = -0.25 * theta0;
  const double w = zeta_width();
  if (s <= a) return s;
  if (s >= a + w) return a + w;
  const double tau = (s - a) / w;
  return a + w * (tau + tau * tau - tau * tau * tau);
}

double TruncationParams::zeta_slope(double s) const {
  const double a = -0.25 * theta0;
  const double w = zeta_width();
  if (s <= a) return 1.0;
  if (s >= a + w) return 0.0;
  const double tau = (s - a) / w;
  return (1.0 - tau) * (1.0 + 3.0 * tau);
}

double truncate_speed(const TruncationParams& trunc, double q2, double sigma2) {
  const double s = q2 - sigma2;
  if (s <= -0.25 * trunc.theta0) return q2;
  return trunc.zeta(s) + sigma2;
}

double QuadratureMesh::local(int a) {
  static const double g = 0.5 / std::sqrt(3.0);
  return a == 0 ? 0.5 - g : 0.5 + g;
}

QuadratureMesh::QuadratureMesh(const Grid& grid, const NozzleGeometry& geom)
    : grid_(grid), geom_(geom), pts_(4 * static_cast<std::size_t>(grid.nx) * grid.ny) {
  const double hx = grid.hxi();
  const double he = grid.heta();
  for (int i = 0; i < grid.nx; ++i) {
    for (int a = 0; a < 2; ++a) {
      const double xi = grid.xi(i) + local(a) * hx;
      const double lo = geom.wall_eval(Wall::lower, xi);
      const double dlo = geom.wall_eval(Wall::lower, xi, 1);
      const double g = geom.gap(xi);
      const double dg = geom.gap(xi, 1);
      for (int j = 0; j < grid.ny; ++j) {
        for (int b = 0; b < 2; ++b) {
          const double eta = grid.eta(j) + local(b) * he;
          Point& p = pts_[index(i, j, a + 2 * b)];
          p.x1 = xi;
          p.x2 = lo + eta * g;
          p.e = -(dlo + eta * dg) / g;
          p.inv_gap = 1.0 / g;
          p.weight = 0.25 * g * hx * he;
        }
      }
    }
  }
}

namespace {

// Shape functions of the cell nodes (i,j), (i+1,j), (i,j+1), (i+1,j+1).
struct Shape {
  double N[4];
  double dxi[4];
  double deta[4];
};

const std::array<Shape, 4>& shapes(double hx, double he, std::array<Shape, 4>& cache,
                                   double& cached_hx, double& cached_he) {
  if (hx == cached_hx && he == cached_he) return cache;
  for (int q = 0; q < 4; ++q) {
    const double s = QuadratureMesh::local(q % 2);
    const double t = QuadratureMesh::local(q / 2);
    Shape& sh = cache[q];
    sh.N[0] = (1 - s) * (1 - t);
    sh.N[1] = s * (1 - t);
    sh.N[2] = (1 - s) * t;
    sh.N[3] = s * t;
    sh.dxi[0] = -(1 - t) / hx;
    sh.dxi[1] = (1 - t) / hx;
    sh.dxi[2] = -t / hx;
    sh.dxi[3] = t / hx;
    sh.deta[0] = -(1 - s) / he;
    sh.deta[1] = -s / he;
    sh.deta[2] = (1 - s) / he;
    sh.deta[3] = s / he;
  }
  cached_hx = hx;
  cached_he = he;
  return cache;
}

// Shape data depend only on the spacings; one table per thread suffices.
const std::array<Shape, 4>& shape_table(const Grid& g) {
  thread_local std::array<Shape, 4> cache{};
  thread_local double hx = -1.0;
  thread_local double he = -1.0;
  return shapes(g.hxi(), g.heta(), cache, hx, he);
}

struct CellNodes {
  int i[4];
  int j[4];
};

CellNodes cell_nodes(int i, int j) {
  return {{i, i + 1, i, i + 1}, {j, j, j + 1, j + 1}};
}

// Physical gradients of the four shape functions at one point.
void physical_shape_gradients(const Shape& sh, const QuadratureMesh::Point& p, double gx[4],
                              double gy[4]) {
  for (int l = 0; l < 4; ++l) {
    gx[l] = sh.dxi[l] + p.e * sh.deta[l];
    gy[l] = p.inv_gap * sh.deta[l];
  }
}

int default_linear_iterations(const Grid& g) { return 20 * (g.nx + g.ny) + 2000; }

}  // namespace

PointGradient interpolate(const QuadratureMesh& mesh, const NodalField& f, int i, int j, int q) {
  const auto& sh = shape_table(mesh.grid())[q];
  const auto& p = mesh.point(i, j, q);
  const CellNodes c = cell_nodes(i, j);
  double v = 0.0, dx = 0.0, de = 0.0;
  for (int l = 0; l < 4; ++l) {
    const double fl = f(c.i[l], c.j[l]);
    v += sh.N[l] * fl;
    dx += sh.dxi[l] * fl;
    de += sh.deta[l] * fl;
  }
  return {v, dx + p.e * de, p.inv_gap * de};
}

FrozenCoefficients coefficients_from_nodal(const QuadratureMesh& mesh, const NodalField& rho,
                                           const NodalField& rhs) {
  const Grid& g = mesh.grid();
  FrozenCoefficients c{std::vector<double>(mesh.points()), std::vector<double>(mesh.points())};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      for (int q = 0; q < 4; ++q) {
        const std::size_t k = mesh.index(i, j, q);
        const double r = interpolate(mesh, rho, i, j, q).value;
        if (!(r > 0.0)) throw DomainError("coefficient density must be positive");
        c.a[k] = 1.0 / r;
        c.rhs[k] = interpolate(mesh, rhs, i, j, q).value;
      }
    }
  }
  return c;
}

NodalField weak_residual(const QuadratureMesh& mesh, const FrozenCoefficients& c,
                         const NodalField& psi) {
  const Grid& g = mesh.grid();
  const auto& table = shape_table(g);
  NodalField r(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const CellNodes n = cell_nodes(i, j);
      double pv[4];
      for (int l = 0; l < 4; ++l) pv[l] = psi(n.i[l], n.j[l]);
      double acc[4] = {0, 0, 0, 0};
      for (int q = 0; q < 4; ++q) {
        const std::size_t k = mesh.index(i, j, q);
        const auto& p = mesh.point(i, j, q);
        double gx[4], gy[4];
        physical_shape_gradients(table[q], p, gx, gy);
        double px = 0.0, py = 0.0;
        for (int l = 0; l < 4; ++l) {
          px += gx[l] * pv[l];
          py += gy[l] * pv[l];
        }
        const double wa = p.weight * c.a[k];
        const double wf = p.weight * c.rhs[k];
        for (int l = 0; l < 4; ++l) acc[l] += wa * (px * gx[l] + py * gy[l]) + wf * table[q].N[l];
      }
      for (int l = 0; l < 4; ++l) r(n.i[l], n.j[l]) += acc[l];
    }
  }
  return r;
}

StencilMatrix assemble(const QuadratureMesh& mesh, const std::vector<double>& a) {
  const Grid& g = mesh.grid();
  const auto& table = shape_table(g);
  StencilMatrix A(g.nx, g.ny - 1);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double K[4][4] = {};
      for (int q = 0; q < 4; ++q) {
        const auto& p = mesh.point(i, j, q);
        double gx[4], gy[4];
        physical_shape_gradients(table[q], p, gx, gy);
        const double wa = p.weight * a[mesh.index(i, j, q)];
        for (int l = 0; l < 4; ++l) {
          for (int k = 0; k < 4; ++k) K[l][k] += wa * (gx[l] * gx[k] + gy[l] * gy[k]);
        }
      }
      const CellNodes n = cell_nodes(i, j);
      for (int l = 0; l < 4; ++l) {
        const int jl = n.j[l];
        if (jl == 0 || jl == g.ny) continue;
        for (int k = 0; k < 4; ++k) {
          const int jk = n.j[k];
          if (jk == 0 || jk == g.ny) continue;
          const int di = n.i[k] - n.i[l];
          const int dj = jk - jl;
          A.at(static_cast<Dir>(3 * (dj + 1) + (di + 1)), g.wrap(n.i[l]), jl - 1) += K[l][k];
        }
      }
    }
  }
  return A;
}

namespace {

// Restriction of a nodal field to the interior rows, and back.
std::vector<double> interior(const NodalField& f, const Grid& g) {
  const auto& v = f.values();
  return std::vector<double>(v.begin() + g.nx, v.end() - g.nx);
}

// psi += omega * delta on the interior rows.
void add_interior(NodalField& psi, const std::vector<double>& delta, double omega, const Grid& g) {
  auto& v = psi.values();
  for (std::size_t k = 0; k < delta.size(); ++k) v[g.nx + k] += omega * delta[k];
}

void apply_dirichlet(NodalField& psi, const Grid& g, double t) {
  for (int i = 0; i < g.nx; ++i) {
    psi(i, 0) = 0.0;
    psi(i, g.ny) = t;
  }
}

NodalField linear_profile(const Grid& g, double t) {
  NodalField psi(g);
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) psi(i, j) = t * g.eta(j);
  }
  return psi;
}

}  // namespace

LinearSolveResult assemble_and_linear_solve(const QuadratureMesh& mesh,
                                            const FrozenCoefficients& c, double t,
                                            double linear_tol, const NodalField* guess) {
  const Grid& g = mesh.grid();
  NodalField psi = guess ? *guess : linear_profile(g, t);
  apply_dirichlet(psi, g, t);
  const StencilMatrix A = assemble(mesh, c.a);
  std::vector<double> b = interior(weak_residual(mesh, c, psi), g);
  for (double& v : b) v = -v;
  std::vector<double> delta(b.size(), 0.0);
  PcgResult res = pcg_solve(A, b, delta, linear_tol, default_linear_iterations(g));
  if (!res.converged) {
    std::ostringstream os;
    os << "linear solve stalled at relative residual " << res.relative_residual << " after "
       << res.iterations << " iterations";
    throw LinearSolverError(os.str());
  }
  add_interior(psi, delta, 1.0, g);
  return {std::move(psi), std::move(res)};
}

ColumnFluxes column_fluxes(const QuadratureMesh& mesh, const FrozenCoefficients& c,
                           const NodalField& psi) {
  const Grid& g = mesh.grid();
  ColumnFluxes out{std::vector<double>(g.nx, 0.0), std::vector<double>(g.nx, 0.0),
                   std::vector<double>(g.nx, 0.0)};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      for (int q = 0; q < 4; ++q) {
        const std::size_t k = mesh.index(i, j, q);
        const auto& p = mesh.point(i, j, q);
        const PointGradient pg = interpolate(mesh, psi, i, j, q);
        out.face[i] += p.weight * c.a[k] * pg.d1 / g.hxi();
        const double s = QuadratureMesh::local(q % 2);
        const double wf = p.weight * c.rhs[k];
        out.load[i] += wf * (1.0 - s);
        out.load[g.wrap(i + 1)] += wf * s;
      }
    }
  }
  const NodalField r = weak_residual(mesh, c, psi);
  for (int i = 0; i < g.nx; ++i) out.wall[i] = r(i, 0) + r(i, g.ny);
  return out;
}

namespace {

// Coefficients at all quadrature points for the current iterate.
struct CoefficientStats {
  double margin = -std::numeric_limits<double>::infinity();
  double ellipticity = 1.0;
};

class CoefficientEvaluator {
 public:
  CoefficientEvaluator(const QuadratureMesh& mesh, const GasModel& gas, const BernoulliProfile& B,
                       const TruncationParams& trunc)
      : mesh_(mesh), gas_(gas), B_(B), trunc_(trunc), rho_(mesh.points(), 0.0) {}

  CoefficientStats evaluate(const NodalField& psi, FrozenCoefficients& c) {
    const Grid& g = mesh_.grid();
    c.a.resize(mesh_.points());
    c.rhs.resize(mesh_.points());
    CoefficientStats st;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        for (int q = 0; q < 4; ++q) {
          const std::size_t k = mesh_.index(i, j, q);
          const PointGradient pg = interpolate(mesh_, psi, i, j, q);
          double Bv, Bd;
          B_.evaluate(pg.value, Bv, Bd);
          const CriticalState& cs = state(Bv);
          const double sigma2 = cs.sigma * cs.sigma;
          const double q2 = pg.d1 * pg.d1 + pg.d2 * pg.d2;
          const double M = std::max(0.0, truncate_speed(trunc_, q2, sigma2));
          const double rho = subsonic_density(gas_, cs, M, rho_[k]);
          rho_[k] = rho;
          c.a[k] = 1.0 / rho;
          c.rhs[k] = rho * Bd;
          st.margin = std::max(st.margin, q2 - sigma2);
          const double r2c2 = rho * rho * gas_.dpdrho(rho);
          st.ellipticity = std::max(st.ellipticity, r2c2 / (r2c2 - M));
        }
      }
    }
    return st;
  }

  const std::vector<double>& density() const { return rho_; }

  const CriticalState& state(double s) {
    if (s != cached_s_) {
      cached_ = critical_state(gas_, s);
      cached_s_ = s;
    }
    return cached_;
  }

 private:
  const QuadratureMesh& mesh_;
  const GasModel& gas_;
  const BernoulliProfile& B_;
  const TruncationParams& trunc_;
  std::vector<double> rho_;
  double cached_s_ = std::numeric_limits<double>::quiet_NaN();
  CriticalState cached_{};
};

double nodal_margin(const QuadratureMesh& mesh, const BernoulliProfile& B, const NodalField& psi,
                    CoefficientEvaluator& ev) {
  const Grid& g = mesh.grid();
  const NodalGradient grad = physical_gradient(psi, g, mesh.geometry(), Stencil::solver);
  double margin = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double s = B.value(psi(i, j));
      const CriticalState& cs = ev.state(s);
      const double q2 = grad.d1(i, j) * grad.d1(i, j) + grad.d2(i, j) * grad.d2(i, j);
      margin = std::max(margin, q2 - cs.sigma * cs.sigma);
    }
  }
  return margin;
}

StreamField picard_impl(const QuadratureMesh& mesh, const GasModel& gas, const BernoulliProfile& B, double t,
                        const TruncationParams& trunc, const SolverOptions& opts,
                        const NodalField* initial) {
  const Grid& g = mesh.grid();
  if (!(t >= 0.0)) throw DomainError("top-wall stream value must be nonnegative");
  if (!(trunc.theta0 > 0.0)) throw DomainError("truncation margin theta0 must be positive");
  if (!(opts.relax > 0.0 && opts.relax <= 1.0)) {
    throw DomainError("relaxation must lie in (0, 1]");
  }

  StreamField out;
  out.grid = g;
  out.t = t;
  out.theta0 = trunc.theta0;
  out.psi = initial ? *initial : linear_profile(g, t);
  if (initial && (initial->nx() != g.nx || initial->ny() != g.ny)) {
    throw DomainError("initial stream function does not match the grid");
  }
  apply_dirichlet(out.psi, g, t);

  CoefficientEvaluator ev(mesh, gas, B, trunc);
  FrozenCoefficients c;
  const int lin_max = opts.linear_max_iter > 0 ? opts.linear_max_iter
                                               : default_linear_iterations(g);
  const double n_int = static_cast<double>(g.nx) * (g.ny - 1);
  CoefficientStats st;
  std::vector<double> delta;

  for (int it = 0;; ++it) {
    st = ev.evaluate(out.psi, c);
    std::vector<double> b = interior(weak_residual(mesh, c, out.psi), g);
    for (double& v : b) v = -v;
    const StencilMatrix A = assemble(mesh, c.a);
    delta.assign(b.size(), 0.0);
    double res = 0.0;
    bool finite = true;
    for (double v : b) finite = finite && std::isfinite(v);
    if (finite) {
      PcgResult lin = pcg_solve(A, b, delta, opts.linear_tol, lin_max);
      out.linear_iterations += lin.iterations;
      if (!lin.converged && lin.relative_residual > 1e-6) {
        out.message = "linear solver stalled";
        break;
      }
      double ss = 0.0;
      for (double v : delta) ss += v * v;
      res = std::sqrt(ss / n_int);
    } else {
      res = std::numeric_limits<double>::infinity();
    }
    out.residual = res;
    out.residual_history.push_back(res);
    out.iterations = it;
    if (!std::isfinite(res)) {
      out.message = "iteration diverged";
      break;
    }
    if (res <= opts.tol) {
      // Final correction is within tolerance; apply it with full weight.
      add_interior(out.psi, delta, 1.0, g);
      out.converged = true;
      break;
    }
    if (it >= opts.max_iter) {
      out.message = "maximum iterations reached";
      break;
    }
    add_interior(out.psi, delta, opts.relax, g);
  }

  st = ev.evaluate(out.psi, c);
  out.margin = std::max(st.margin, nodal_margin(mesh, B, out.psi, ev));
  out.ellipticity_ratio = st.ellipticity;
  out.near_sonic = out.margin >= -trunc.theta0 / 8.0;
  if (out.converged && out.near_sonic) out.message = "near sonic";
  return out;
}

}  // namespace

std::vector<double> truncated_density(const QuadratureMesh& mesh, const GasModel& gas,
                                      const BernoulliProfile& B, const TruncationParams& trunc,
                                      const NodalField& psi) {
  CoefficientEvaluator ev(mesh, gas, B, trunc);
  FrozenCoefficients c;
  ev.evaluate(psi, c);
  return ev.density();
}

StreamField picard_solve(const Grid& grid, const NozzleGeometry& geom, const GasModel& gas,
                         const BernoulliProfile& B, double t, const TruncationParams& trunc,
                         const SolverOptions& opts, const NodalField* initial) {
  const QuadratureMesh mesh(grid, geom);
  return picard_impl(mesh, gas, B, t, trunc, opts, initial);
}

StreamField picard_solve(const QuadratureMesh& mesh, const GasModel& gas,
                         const BernoulliProfile& B, double t, const TruncationParams& trunc,
                         const SolverOptions& opts, const NodalField* initial) {
  return picard_impl(mesh, gas, B, t, trunc, opts, initial);
}

}  // namespace subflow
