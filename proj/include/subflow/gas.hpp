#pragma once

#include <optional>

namespace subflow {

enum class GasKind { polytropic, isothermal };

/// Barotropic equation of state p(rho).
///
/// Polytropic: p = A rho^gamma with h(0) = 0.
/// Isothermal: p = c^2 rho with h(1) = 0, so h is unbounded below.
class GasModel {
 public:
  static GasModel polytropic(double gamma, double A);
  static GasModel isothermal(double sound_speed);

  GasKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double A() const { return A_; }
  double sound_speed_constant() const { return c_; }

  /// Infimum of the enthalpy; empty when h is unbounded below.
  std::optional<double> enthalpy_floor() const;

  double pressure(double rho) const;
  /// p'(rho), i.e. the squared sound speed.
  double dpdrho(double rho) const;
  double d2pdrho2(double rho) const;
  double enthalpy(double rho) const;
  double sound_speed(double rho) const;

  /// Throws DomainError when s is at or below the enthalpy floor.
  void require_admissible_bernoulli(double s) const;

 private:
  GasModel(GasKind kind, double gamma, double A, double c)
      : kind_(kind), gamma_(gamma), A_(A), c_(c) {}

  GasKind kind_;
  double gamma_;
  double A_;
  double c_;
};

/// Sonic and stagnation quantities at a fixed Bernoulli value s.
struct CriticalState {
  double s;
  double rho_max;     ///< h(rho_max) = s
  double rho_crit;    ///< h(rho_crit) + speed_crit^2 / 2 = s, p'(rho_crit) = speed_crit^2
  double speed_crit;
  double sigma;       ///< critical momentum flux rho_crit * speed_crit
};

double enthalpy(const GasModel& gas, double rho);

CriticalState critical_state(const GasModel& gas, double s);

/// Square of the critical momentum flux, the sonic bound on |grad psi|^2.
double sigma_squared(const GasModel& gas, double s);

/// Subsonic root of h(rho) + M / (2 rho^2) = s, for 0 <= M <= Sigma^2(s).
///
/// Throws SupersonicBranchError when M exceeds Sigma^2(s) and DomainError when
/// s is not admissible or M is negative.
double subsonic_density(const GasModel& gas, double M, double s);

/// Same, reusing a precomputed critical state; `guess` (if inside the
/// bracket) seeds the Newton iteration.
double subsonic_density(const GasModel& gas, const CriticalState& cs, double M,
                        double guess = 0.0);

struct SubsonicPartials {
  double rho;
  double d_dM;  ///< H / (2 (M - H^2 c^2)) < 0
  double d_ds;  ///< H^3 / (H^2 c^2 - M) > 0
};

/// Density together with its partial derivatives. At the sonic boundary the
/// denominators vanish, so M >= Sigma^2(s) is reported as a DomainError.
SubsonicPartials subsonic_density_partials(const GasModel& gas, double M, double s);

}  // namespace subflow
