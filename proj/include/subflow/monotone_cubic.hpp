#pragma once

#include <span>
#include <vector>

namespace subflow {

/// Shape-preserving (Fritsch-Carlson / PCHIP) cubic Hermite interpolant of
/// samples on a uniform grid of [lo, hi].
///
/// Arguments outside [lo, hi] are clamped to the interval.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(double lo, double hi, std::vector<double> samples);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return y_.size(); }
  std::span<const double> samples() const { return y_; }
  std::span<const double> slopes() const { return d_; }
  double spacing() const { return h_; }
  double node(std::size_t k) const { return lo_ + h_ * static_cast<double>(k); }

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// Exact integral of the interpolant over [lo, x].
  double integral(double x) const;
  double total_integral() const { return cumulative_.back(); }

  /// Smallest y with integral(y) = target, for a positive interpolant.
  /// target is clamped to [0, total_integral()].
  double inverse_integral(double target) const;

 private:
  struct Local {
    std::size_t k;
    double tau;
  };
  Local locate(double x) const;

  double lo_ = 0.0;
  double hi_ = 1.0;
  double h_ = 1.0;
  std::vector<double> y_;
  std::vector<double> d_;
  std::vector<double> cumulative_;
};

}  // namespace subflow
