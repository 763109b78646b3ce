#include "subflow/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subflow/error.hpp"

namespace subflow {

namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Three-point endpoint slope with the usual shape-preserving limits.
double end_slope(double d0, double d1) {
  double d = 0.5 * (3.0 * d0 - d1);
  if (sign(d) != sign(d0)) return 0.0;
  if (sign(d0) != sign(d1) && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(double lo, double hi, std::vector<double> samples)
    : lo_(lo), hi_(hi), y_(std::move(samples)) {
  if (y_.size() < 2) throw DomainError("interpolant needs at least two samples");
  if (!(hi_ > lo_)) throw DomainError("interpolation interval must be nonempty");
  const std::size_t n = y_.size() - 1;
  h_ = (hi_ - lo_) / static_cast<double>(n);

  std::vector<double> delta(n);
  for (std::size_t k = 0; k < n; ++k) delta[k] = (y_[k + 1] - y_[k]) / h_;

  d_.assign(n + 1, 0.0);
  if (n == 1) {
    d_[0] = d_[1] = delta[0];
  } else {
    for (std::size_t k = 1; k < n; ++k) {
      const double a = delta[k - 1];
      const double b = delta[k];
      if (a * b > 0.0) d_[k] = 2.0 / (1.0 / a + 1.0 / b);
    }
    d_[0] = end_slope(delta[0], delta[1]);
    d_[n] = end_slope(delta[n - 1], delta[n - 2]);
  }

  cumulative_.assign(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    cumulative_[k + 1] = cumulative_[k] + h_ * 0.5 * (y_[k] + y_[k + 1]) +
                         h_ * h_ * (d_[k] - d_[k + 1]) / 12.0;
  }
}

MonotoneCubic::Local MonotoneCubic::locate(double x) const {
  const std::size_t n = y_.size() - 1;
  double t = (std::clamp(x, lo_, hi_) - lo_) / h_;
  auto k = static_cast<std::size_t>(t);
  if (k >= n) k = n - 1;
  return {k, t - static_cast<double>(k)};
}

double MonotoneCubic::value(double x) const {
  const auto [k, t] = locate(x);
  const double t2 = t * t;
  const double t3 = t2 * t;
  return y_[k] * (2 * t3 - 3 * t2 + 1) + h_ * d_[k] * (t3 - 2 * t2 + t) +
         y_[k + 1] * (-2 * t3 + 3 * t2) + h_ * d_[k + 1] * (t3 - t2);
}

double MonotoneCubic::derivative(double x) const {
  const auto [k, t] = locate(x);
  const double t2 = t * t;
  return (y_[k] * (6 * t2 - 6 * t) + y_[k + 1] * (-6 * t2 + 6 * t)) / h_ +
         d_[k] * (3 * t2 - 4 * t + 1) + d_[k + 1] * (3 * t2 - 2 * t);
}

double MonotoneCubic::second_derivative(double x) const {
  const auto [k, t] = locate(x);
  return (y_[k] * (12 * t - 6) + y_[k + 1] * (-12 * t + 6)) / (h_ * h_) +
         (d_[k] * (6 * t - 4) + d_[k + 1] * (6 * t - 2)) / h_;
}

double MonotoneCubic::integral(double x) const {
  const auto [k, t] = locate(x);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double part = y_[k] * (0.5 * t4 - t3 + t) +
                      h_ * d_[k] * (0.25 * t4 - 2.0 * t3 / 3.0 + 0.5 * t2) +
                      y_[k + 1] * (-0.5 * t4 + t3) + h_ * d_[k + 1] * (0.25 * t4 - t3 / 3.0);
  return cumulative_[k] + h_ * part;
}

double MonotoneCubic::inverse_integral(double target) const {
  const double total = cumulative_.back();
  if (target <= 0.0) return lo_;
  if (target >= total) return hi_;
  // Interval k with cumulative_[k] <= target < cumulative_[k + 1].
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  k = std::min(k, y_.size() - 2);

  double a = node(k);
  double b = node(k + 1);
  double x = a + (b - a) * (target - cumulative_[k]) / (cumulative_[k + 1] - cumulative_[k]);
  for (int it_n = 0; it_n < 100; ++it_n) {
    const double f = integral(x) - target;
    if (f > 0.0) {
      b = x;
    } else {
      a = x;
    }
    const double w = value(x);
    double next = (w > 0.0) ? x - f / w : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace subflow
