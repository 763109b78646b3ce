#include "subflow/bernoulli_profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subflow/error.hpp"

namespace subflow {

namespace {
constexpr double kFluxRelTol = 1e-10;
// Endpoint sign conditions are checked with a round-off allowance.
constexpr double kSignSlack = 1e-13;
}  // namespace

InflowProfile::InflowProfile(std::vector<double> samples, double mass_flux,
                             std::optional<double> sigma0)
    : W_(0.0, 1.0, std::move(samples)), m_(mass_flux), sigma0_(sigma0) {
  if (!(m_ > 0.0)) throw AdmissibilityError("inflow profile needs a positive mass flux");
  const double total = W_.total_integral();
  if (std::abs(total - m_) > kFluxRelTol * m_) {
    std::ostringstream os;
    os.precision(17);
    os << "inflow profile integrates to " << total << " instead of the mass flux " << m_;
    throw AdmissibilityError(os.str());
  }
  const auto y = W_.samples();
  const double floor = sigma0_ ? 0.5 * *sigma0_ : 0.0;
  const auto lowest = std::min_element(y.begin(), y.end());
  if (!(*lowest > floor)) {
    std::ostringstream os;
    os << "inflow profile violates W > " << (sigma0_ ? "sigma0/2 = " : "") << floor
       << " at x2 = " << W_.node(static_cast<std::size_t>(lowest - y.begin()))
       << " (W = " << *lowest << ")";
    throw AdmissibilityError(os.str());
  }
}

InflowProfile InflowProfile::normalized(std::vector<double> samples, double mass_flux,
                                        std::optional<double> sigma0) {
  const MonotoneCubic raw(0.0, 1.0, samples);
  const double total = raw.total_integral();
  if (!(total > 0.0)) throw AdmissibilityError("inflow profile has nonpositive flux");
  const double scale = mass_flux / total;
  for (double& w : samples) w *= scale;
  return InflowProfile(std::move(samples), mass_flux, sigma0);
}

InflowProfile InflowProfile::uniform(double mass_flux, std::size_t intervals) {
  return InflowProfile(std::vector<double>(intervals + 1, mass_flux), mass_flux);
}

KappaMap build_kappa(const InflowProfile& profile) { return KappaMap(profile); }

BernoulliDatum BernoulliDatum::constant(double value) {
  BernoulliDatum d;
  d.constant_ = value;
  return d;
}

BernoulliDatum BernoulliDatum::from_samples(std::vector<double> samples) {
  BernoulliDatum d;
  if (samples.size() == 1) {
    d.constant_ = samples.front();
    return d;
  }
  d.interp_.emplace(0.0, 1.0, std::move(samples));
  return d;
}

double BernoulliDatum::value(double x2) const {
  return interp_ ? interp_->value(x2) : constant_;
}

double BernoulliDatum::derivative(double x2) const {
  return interp_ ? interp_->derivative(x2) : 0.0;
}

double BernoulliDatum::min() const {
  if (!interp_) return constant_;
  const auto y = interp_->samples();
  return *std::min_element(y.begin(), y.end());
}

double BernoulliDatum::max() const {
  if (!interp_) return constant_;
  const auto y = interp_->samples();
  return *std::max_element(y.begin(), y.end());
}

double BernoulliDatum::eps(double Bbar) const {
  if (!interp_) return std::abs(constant_ - Bbar);
  const auto y = interp_->samples();
  const auto d = interp_->slopes();
  const double h = interp_->spacing();
  double e = 0.0;
  for (double v : y) e = std::max(e, std::abs(v - Bbar));
  for (double s : d) e = std::max(e, std::abs(s));
  for (std::size_t k = 1; k + 1 < y.size(); ++k) {
    e = std::max(e, std::abs(y[k + 1] - 2.0 * y[k] + y[k - 1]) / (h * h));
  }
  return e;
}

BernoulliProfile BernoulliProfile::constant(double Bbar) {
  BernoulliProfile p;
  p.B0_ = BernoulliDatum::constant(Bbar);
  p.Bbar_ = Bbar;
  p.min_value_ = Bbar;
  p.min_inflow_ = Bbar;
  p.B_at_0_ = p.B_at_m_ = Bbar;
  return p;
}

BernoulliProfile BernoulliProfile::compose_and_extend(const BernoulliDatum& B0,
                                                      const InflowProfile& W, double Bbar,
                                                      const GasModel& gas) {
  if (B0.is_constant()) {
    BernoulliProfile p = constant(B0.value(0.0));
    p.Bbar_ = Bbar;
    p.eps_ = B0.eps(Bbar);
    p.W_ = W;
    p.m_ = W.mass_flux();
    gas.require_admissible_bernoulli(p.min_value_);
    return p;
  }
  const double d0 = B0.derivative(0.0);
  const double d1 = B0.derivative(1.0);
  if (d0 < -kSignSlack) {
    throw AdmissibilityError("Bernoulli datum violates B0'(0) >= 0 (B0'(0) = " +
                             std::to_string(d0) + ")");
  }
  if (d1 > kSignSlack) {
    throw AdmissibilityError("Bernoulli datum violates B0'(1) <= 0 (B0'(1) = " +
                             std::to_string(d1) + ")");
  }

  BernoulliProfile p;
  p.B0_ = B0;
  p.W_ = W;
  p.m_ = W.mass_flux();
  p.Bbar_ = Bbar;
  p.eps_ = B0.eps(Bbar);
  p.B_at_0_ = B0.value(0.0);
  p.B_at_m_ = B0.value(1.0);
  p.slope_at_0_ = std::max(0.0, d0) / W.value(0.0);
  p.slope_at_m_ = std::min(0.0, d1) / W.value(1.0);
  p.min_inflow_ = B0.min();

  const double left_floor = p.B_at_0_ - 0.5 * p.slope_at_0_ * p.m_;
  const double right_floor = p.B_at_m_ + 0.5 * p.slope_at_m_ * p.m_;
  p.min_value_ = std::min({p.min_inflow_, left_floor, right_floor});

  if (auto floor = gas.enthalpy_floor(); floor && !(p.min_value_ > *floor)) {
    throw AdmissibilityError("extended Bernoulli function reaches " +
                             std::to_string(p.min_value_) +
                             ", not above the enthalpy floor of the gas");
  }
  return p;
}

double BernoulliProfile::kappa(double psi) const {
  if (!W_) return psi;
  return W_->W().inverse_integral(psi);
}

void BernoulliProfile::evaluate(double s, double& value, double& slope) const {
  if (!W_ || B0_.is_constant()) {
    value = B_at_0_;
    slope = 0.0;
    return;
  }
  const double m = m_;
  if (s < -m) {
    value = B_at_0_ - 0.5 * slope_at_0_ * m;
    slope = 0.0;
  } else if (s < 0.0) {
    value = B_at_0_ + slope_at_0_ * (0.5 * s * s + m * s) / m;
    slope = slope_at_0_ * (s + m) / m;
  } else if (s <= m) {
    const double k = W_->W().inverse_integral(s);
    value = B0_.value(k);
    slope = B0_.derivative(k) / W_->value(k);
  } else if (s <= 2.0 * m) {
    const double d = s - m;
    value = B_at_m_ + slope_at_m_ * (d - 0.5 * d * d / m);
    slope = slope_at_m_ * (2.0 * m - s) / m;
  } else {
    value = B_at_m_ + 0.5 * slope_at_m_ * m;
    slope = 0.0;
  }
}

double BernoulliProfile::value(double s) const {
  double v, d;
  evaluate(s, v, d);
  return v;
}

double BernoulliProfile::derivative(double s) const {
  double v, d;
  evaluate(s, v, d);
  return d;
}

}  // namespace subflow
