#include "subflow/gas.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "subflow/error.hpp"

namespace subflow {

GasModel GasModel::polytropic(double gamma, double A) {
  if (!(gamma > 1.0)) throw DomainError("gamma must exceed 1 for a polytropic gas");
  if (!(A > 0.0)) throw DomainError("pressure scale A must be positive");
  return GasModel(GasKind::polytropic, gamma, A, 0.0);
}

GasModel GasModel::isothermal(double sound_speed) {
  if (!(sound_speed > 0.0)) throw DomainError("isothermal sound speed must be positive");
  return GasModel(GasKind::isothermal, 1.0, 0.0, sound_speed);
}

std::optional<double> GasModel::enthalpy_floor() const {
  if (kind_ == GasKind::polytropic) return 0.0;
  return std::nullopt;
}

double GasModel::pressure(double rho) const {
  if (kind_ == GasKind::polytropic) return A_ * std::pow(rho, gamma_);
  return c_ * c_ * rho;
}

double GasModel::dpdrho(double rho) const {
  if (kind_ == GasKind::polytropic) return A_ * gamma_ * std::pow(rho, gamma_ - 1.0);
  return c_ * c_;
}

double GasModel::d2pdrho2(double rho) const {
  if (kind_ == GasKind::polytropic) {
    return A_ * gamma_ * (gamma_ - 1.0) * std::pow(rho, gamma_ - 2.0);
  }
  return 0.0;
}

double GasModel::enthalpy(double rho) const {
  if (!(rho > 0.0)) throw DomainError("enthalpy requires a positive density");
  if (kind_ == GasKind::polytropic) {
    return A_ * gamma_ / (gamma_ - 1.0) * std::pow(rho, gamma_ - 1.0);
  }
  return c_ * c_ * std::log(rho);
}

double GasModel::sound_speed(double rho) const { return std::sqrt(dpdrho(rho)); }

void GasModel::require_admissible_bernoulli(double s) const {
  if (kind_ == GasKind::isothermal) {
    if (!std::isfinite(s)) throw DomainError("Bernoulli value must be finite");
    return;
  }
  if (!(s > 0.0)) {
    throw DomainError("Bernoulli value " + std::to_string(s) +
                      " is not above the enthalpy floor 0");
  }
}

double enthalpy(const GasModel& gas, double rho) { return gas.enthalpy(rho); }

CriticalState critical_state(const GasModel& gas, double s) {
  gas.require_admissible_bernoulli(s);
  CriticalState cs{};
  cs.s = s;
  if (gas.kind() == GasKind::polytropic) {
    const double g = gas.gamma();
    const double k = gas.A() * g / (g - 1.0);  // h = k rho^(g-1)
    // p' = (g-1) h, so the sonic condition gives h(rho_crit) = 2 s / (g+1).
    cs.rho_max = std::pow(s / k, 1.0 / (g - 1.0));
    cs.rho_crit = std::pow(2.0 * s / ((g + 1.0) * k), 1.0 / (g - 1.0));
    cs.speed_crit = std::sqrt(2.0 * (g - 1.0) * s / (g + 1.0));
  } else {
    const double c2 = gas.sound_speed_constant() * gas.sound_speed_constant();
    cs.rho_max = std::exp(s / c2);
    cs.rho_crit = std::exp(s / c2 - 0.5);
    cs.speed_crit = gas.sound_speed_constant();
  }
  cs.sigma = cs.rho_crit * cs.speed_crit;
  return cs;
}

double sigma_squared(const GasModel& gas, double s) {
  const double sigma = critical_state(gas, s).sigma;
  return sigma * sigma;
}

namespace {

// Relative width of the band below Sigma^2 where the two branches are
// numerically indistinguishable and the sonic density is returned.
constexpr double kSonicBand = 1e-10;

double invert_subsonic(const GasModel& gas, const CriticalState& cs, double M, double guess) {
  const double s = cs.s;
  const double sigma2 = cs.sigma * cs.sigma;
  if (M < 0.0) throw DomainError("momentum flux squared must be nonnegative");
  if (M > sigma2) {
    throw SupersonicBranchError("M = " + std::to_string(M) + " exceeds Sigma^2(s) = " +
                                std::to_string(sigma2));
  }
  if (M == 0.0) return cs.rho_max;
  if (sigma2 - M < kSonicBand * sigma2) return cs.rho_crit;

  // f(rho) = h(rho) + M / (2 rho^2) - s is increasing on [rho_crit, rho_max]
  // with f(rho_crit) <= 0 <= f(rho_max).
  double lo = cs.rho_crit;
  double hi = cs.rho_max;
  double rho = (guess > lo && guess < hi) ? guess : hi;
  const double ftol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s));
  for (int it = 0; it < 200; ++it) {
    const double f = gas.enthalpy(rho) + M / (2.0 * rho * rho) - s;
    if (std::abs(f) <= ftol) return rho;
    if (f > 0.0) {
      hi = rho;
    } else {
      lo = rho;
    }
    const double df = gas.dpdrho(rho) / rho - M / (rho * rho * rho);
    double next = (df > 0.0) ? rho - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - rho) <= 2.0 * std::numeric_limits<double>::epsilon() * rho) {
      return next;
    }
    rho = next;
  }
  return rho;
}

}  // namespace

double subsonic_density(const GasModel& gas, double M, double s) {
  const CriticalState cs = critical_state(gas, s);
  return invert_subsonic(gas, cs, M, 0.0);
}

double subsonic_density(const GasModel& gas, const CriticalState& cs, double M, double guess) {
  return invert_subsonic(gas, cs, M, guess);
}

SubsonicPartials subsonic_density_partials(const GasModel& gas, double M, double s) {
  const CriticalState cs = critical_state(gas, s);
  if (M >= cs.sigma * cs.sigma) {
    throw DomainError("density partials are undefined at or beyond the sonic boundary");
  }
  const double H = invert_subsonic(gas, cs, M, 0.0);
  const double H2c2 = H * H * gas.dpdrho(H);
  SubsonicPartials out{};
  out.rho = H;
  out.d_dM = H / (2.0 * (M - H2c2));
  out.d_ds = H * H * H / (H2c2 - M);
  return out;
}

}  // namespace subflow
