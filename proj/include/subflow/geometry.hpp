#pragma once

#include <vector>

namespace subflow {

/// f(x) = mean + sum_k cos[k-1] cos(2 pi k x / L) + sin[k-1] sin(2 pi k x / L).
struct FourierSeries {
  double mean = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;

  /// Derivative of the given order (0, 1 or 2) at x for period L.
  double eval(double x, double period, int order = 0) const;
  /// Sum of |coefficient| * (2 pi k / L)^order, an upper bound for |f^(order)|.
  double derivative_bound(double period, int order) const;
};

enum class Wall { lower = 1, upper = 2 };

struct MappedPoint {
  double x1;
  double x2;
  /// d(x1, x2) / d(xi, eta), row-major: [dx1/dxi, dx1/deta; dx2/dxi, dx2/deta].
  double jacobian[2][2];
  double det() const { return jacobian[0][0] * jacobian[1][1] - jacobian[0][1] * jacobian[1][0]; }
};

/// One period of a nozzle bounded by the graphs x2 = f1(x1) < x2 = f2(x1).
///
/// The walls are normalized on construction so that f1(0) = 0 and f2(0) = 1.
/// The computational rectangle [0, L] x [0, 1] is mapped onto the period by
/// the vertical shear x2 = f1(xi) + eta (f2(xi) - f1(xi)).
class NozzleGeometry {
 public:
  NozzleGeometry(double period, FourierSeries f1, FourierSeries f2);

  static NozzleGeometry flat_channel(double period = 1.0);

  double period() const { return period_; }
  const FourierSeries& series(Wall w) const { return w == Wall::lower ? f1_ : f2_; }

  double wall_eval(Wall w, double x1, int order = 0) const;
  /// f2 - f1 and its derivatives.
  double gap(double x1, int order = 0) const;

  MappedPoint map_to_physical(double xi, double eta) const;

  /// Lower bound on inf (f2 - f1): dense sample minimum less a slope margin.
  double gap_min() const { return gap_min_; }
  /// max over i and orders 0..2 of the bound on |f_i^(order)|.
  double wall_norm() const { return wall_norm_; }
  /// True if the constructor had to shift/scale the walls to normalize them.
  bool was_normalized() const { return normalized_; }

 private:
  double period_;
  FourierSeries f1_;
  FourierSeries f2_;
  double gap_min_ = 0.0;
  double wall_norm_ = 0.0;
  bool normalized_ = false;
};

}  // namespace subflow
