#pragma once

#include <optional>
#include <vector>

#include "subflow/gas.hpp"
#include "subflow/monotone_cubic.hpp"

namespace subflow {

/// Inflow momentum profile W(x2) = (rho u)(0, x2) on [0, 1] carrying mass flux m.
class InflowProfile {
 public:
  /// Validates int_0^1 W = m (relative 1e-10) and W > sigma0 / 2 (or W > 0
  /// when sigma0 is not given). Throws AdmissibilityError naming the violation.
  InflowProfile(std::vector<double> samples, double mass_flux,
                std::optional<double> sigma0 = std::nullopt);

  /// Rescales the samples so that the interpolant integrates to mass_flux.
  static InflowProfile normalized(std::vector<double> samples, double mass_flux,
                                  std::optional<double> sigma0 = std::nullopt);

  static InflowProfile uniform(double mass_flux, std::size_t intervals);

  const MonotoneCubic& W() const { return W_; }
  double mass_flux() const { return m_; }
  std::optional<double> sigma0() const { return sigma0_; }
  double value(double x2) const { return W_.value(x2); }
  std::span<const double> samples() const { return W_.samples(); }

 private:
  MonotoneCubic W_;
  double m_;
  std::optional<double> sigma0_;
};

/// psi -> kappa(psi) with psi = int_0^kappa W, kappa' = 1 / W(kappa).
class KappaMap {
 public:
  explicit KappaMap(InflowProfile profile) : profile_(std::move(profile)) {}
  double value(double psi) const { return profile_.W().inverse_integral(psi); }
  double derivative(double psi) const { return 1.0 / profile_.W().value(value(psi)); }
  double mass_flux() const { return profile_.mass_flux(); }

 private:
  InflowProfile profile_;
};

KappaMap build_kappa(const InflowProfile& profile);

/// Bernoulli function prescribed on the inflow section, B0(x2) on [0, 1].
class BernoulliDatum {
 public:
  static BernoulliDatum constant(double value);
  /// Samples on a uniform grid of [0, 1], interpolated shape-preservingly.
  static BernoulliDatum from_samples(std::vector<double> samples);

  bool is_constant() const { return !interp_; }
  double value(double x2) const;
  double derivative(double x2) const;
  double min() const;
  double max() const;
  /// max(|B0 - Bbar|, |B0'|, Lipschitz estimate of B0').
  double eps(double Bbar) const;

 private:
  double constant_ = 0.0;
  std::optional<MonotoneCubic> interp_;
};

/// The Bernoulli function as a function of the stream value, B(psi) =
/// B0(kappa(psi)) on [0, m], extended to the whole line so that its slope is
/// continuous, nonnegative below 0, nonpositive above m, and vanishes outside
/// [-m, 2m].
class BernoulliProfile {
 public:
  /// Irrotational case: B == Bbar.
  static BernoulliProfile constant(double Bbar);

  /// Composes B0 with the kappa map of W and extends. Throws
  /// AdmissibilityError on endpoint-sign violations of B0 or when the extended
  /// function dips to the enthalpy floor of the gas.
  static BernoulliProfile compose_and_extend(const BernoulliDatum& B0, const InflowProfile& W,
                                             double Bbar, const GasModel& gas);

  bool is_constant() const { return !W_; }
  double mass_flux() const { return m_; }
  double Bbar() const { return Bbar_; }
  double eps() const { return eps_; }
  /// min over the real line of the extended function.
  double min_value() const { return min_value_; }
  /// min of B0 over [0, 1].
  double min_inflow() const { return min_inflow_; }

  /// Extended Bernoulli function and its slope at an arbitrary stream value.
  double value(double s) const;
  double derivative(double s) const;
  /// Both at once; cheaper than two calls since kappa is inverted once.
  void evaluate(double s, double& value, double& slope) const;

  double kappa(double psi) const;
  const std::optional<InflowProfile>& inflow() const { return W_; }
  const BernoulliDatum& datum() const { return B0_; }

 private:
  BernoulliDatum B0_ = BernoulliDatum::constant(0.0);
  std::optional<InflowProfile> W_;
  double m_ = 0.0;
  double Bbar_ = 0.0;
  double eps_ = 0.0;
  double min_value_ = 0.0;
  double min_inflow_ = 0.0;
  double B_at_0_ = 0.0;
  double B_at_m_ = 0.0;
  double slope_at_0_ = 0.0;
  double slope_at_m_ = 0.0;
};

}  // namespace subflow
