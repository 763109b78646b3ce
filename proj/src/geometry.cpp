#include "subflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "subflow/error.hpp"

namespace subflow {

namespace {
constexpr int kGapSamples = 4096;
}

double FourierSeries::eval(double x, double period, int order) const {
  if (order < 0 || order > 2) throw DomainError("wall derivative order must be 0, 1 or 2");
  const double w = 2.0 * std::numbers::pi / period;
  double v = (order == 0) ? mean : 0.0;
  const std::size_t n = std::max(cos.size(), sin.size());
  for (std::size_t k = 1; k <= n; ++k) {
    const double a = k <= cos.size() ? cos[k - 1] : 0.0;
    const double b = k <= sin.size() ? sin[k - 1] : 0.0;
    const double wk = w * static_cast<double>(k);
    const double c = std::cos(wk * x);
    const double s = std::sin(wk * x);
    switch (order) {
      case 0: v += a * c + b * s; break;
      case 1: v += wk * (-a * s + b * c); break;
      default: v += -wk * wk * (a * c + b * s); break;
    }
  }
  return v;
}

double FourierSeries::derivative_bound(double period, int order) const {
  const double w = 2.0 * std::numbers::pi / period;
  double b = (order == 0) ? std::abs(mean) : 0.0;
  const std::size_t n = std::max(cos.size(), sin.size());
  for (std::size_t k = 1; k <= n; ++k) {
    const double a = k <= cos.size() ? cos[k - 1] : 0.0;
    const double s = k <= sin.size() ? sin[k - 1] : 0.0;
    b += std::hypot(a, s) * std::pow(w * static_cast<double>(k), order);
  }
  return b;
}

NozzleGeometry::NozzleGeometry(double period, FourierSeries f1, FourierSeries f2)
    : period_(period), f1_(std::move(f1)), f2_(std::move(f2)) {
  if (!(period_ > 0.0)) throw AdmissibilityError("nozzle period must be positive");

  const double lower0 = f1_.eval(0.0, period_);
  const double upper0 = f2_.eval(0.0, period_);
  const double width0 = upper0 - lower0;
  if (!(width0 > 0.0)) {
    throw AdmissibilityError("walls must satisfy f1(0) < f2(0)");
  }
  if (std::abs(lower0) > 1e-12 || std::abs(upper0 - 1.0) > 1e-12) {
    normalized_ = true;
    auto rescale = [&](FourierSeries& f) {
      f.mean = (f.mean - lower0) / width0;
      for (double& c : f.cos) c /= width0;
      for (double& s : f.sin) s /= width0;
    };
    rescale(f1_);
    rescale(f2_);
  }

  double sample_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGapSamples; ++k) {
    const double x = period_ * static_cast<double>(k) / kGapSamples;
    sample_min = std::min(sample_min, gap(x));
  }
  // Between samples the gap can dip by at most |g'|max * dx / 2.
  const double slope = f1_.derivative_bound(period_, 1) + f2_.derivative_bound(period_, 1);
  gap_min_ = sample_min - 0.5 * slope * period_ / kGapSamples;
  if (!(gap_min_ > 0.0)) {
    throw AdmissibilityError("nozzle walls touch or cross: inf(f2 - f1) estimate " +
                             std::to_string(gap_min_));
  }

  for (int order = 0; order <= 2; ++order) {
    wall_norm_ = std::max({wall_norm_, f1_.derivative_bound(period_, order),
                           f2_.derivative_bound(period_, order)});
  }
}

NozzleGeometry NozzleGeometry::flat_channel(double period) {
  return NozzleGeometry(period, FourierSeries{0.0, {}, {}}, FourierSeries{1.0, {}, {}});
}

double NozzleGeometry::wall_eval(Wall w, double x1, int order) const {
  return series(w).eval(x1, period_, order);
}

double NozzleGeometry::gap(double x1, int order) const {
  return f2_.eval(x1, period_, order) - f1_.eval(x1, period_, order);
}

MappedPoint NozzleGeometry::map_to_physical(double xi, double eta) const {
  const double lo = f1_.eval(xi, period_);
  const double dlo = f1_.eval(xi, period_, 1);
  const double g = gap(xi);
  const double dg = gap(xi, 1);
  MappedPoint p{};
  p.x1 = xi;
  p.x2 = lo + eta * g;
  p.jacobian[0][0] = 1.0;
  p.jacobian[0][1] = 0.0;
  p.jacobian[1][0] = dlo + eta * dg;
  p.jacobian[1][1] = g;
  return p;
}

}  // namespace subflow
