#include "subflow/flow_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subflow/differencing.hpp"

namespace subflow {

FlowState reconstruct_flow(const StreamField& stream, const NozzleGeometry& geom,
                           const GasModel& gas, const BernoulliProfile& B) {
  const Grid& g = stream.grid;
  const NodalField& psi = stream.psi;
  const TruncationParams trunc{stream.theta0};
  FlowState f{g, NodalField(g), NodalField(g), NodalField(g), NodalField(g), {}, {}, {}};

  const NodalGradient grad = physical_gradient(psi, g, geom, Stencil::solver);
  f.subsonic_margin = -std::numeric_limits<double>::infinity();
  f.min_u = std::numeric_limits<double>::infinity();
  f.max_mach = 0.0;
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double d1 = grad.d1(i, j);
      const double d2 = grad.d2(i, j);
      const double s = B.value(psi(i, j));
      const CriticalState cs = critical_state(gas, s);
      const double sigma2 = cs.sigma * cs.sigma;
      const double q2 = d1 * d1 + d2 * d2;
      const double M = trunc.theta0 > 0.0 ? std::max(0.0, truncate_speed(trunc, q2, sigma2))
                                          : std::min(q2, sigma2);
      const double rho = subsonic_density(gas, cs, M);
      const double u = d2 / rho;
      const double v = -d1 / rho;
      const double c2 = gas.dpdrho(rho);
      const double speed2 = u * u + v * v;
      f.rho(i, j) = rho;
      f.u(i, j) = u;
      f.v(i, j) = v;
      f.mach(i, j) = std::sqrt(speed2 / c2);
      f.subsonic_margin = std::max(f.subsonic_margin, speed2 - c2);
      f.min_u = std::min(f.min_u, u);
      f.max_mach = std::max(f.max_mach, f.mach(i, j));
    }
  }

  f.face_momentum.resize(static_cast<std::size_t>(g.nx) * g.ny);
  f.section_gap.resize(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double gap = geom.gap(g.xi(i));
    f.section_gap[i] = gap;
    for (int j = 0; j < g.ny; ++j) {
      f.face_momentum[static_cast<std::size_t>(j) * g.nx + i] =
          (psi(i, j + 1) - psi(i, j)) / (gap * g.heta());
    }
  }
  update_section_fluxes(f);
  return f;
}

void update_section_fluxes(FlowState& f) {
  const Grid& g = f.grid;
  f.mass_flux_by_section.assign(g.nx, 0.0);
  for (int i = 0; i < g.nx; ++i) {
    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j) sum += f.face(i, j);
    f.mass_flux_by_section[i] = sum * f.section_gap[i] * g.heta();
  }
}

}  // namespace subflow
