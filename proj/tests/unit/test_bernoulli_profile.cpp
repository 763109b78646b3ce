#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "subflow/bernoulli_profile.hpp"
#include "subflow/error.hpp"

using namespace subflow;

namespace {

constexpr double kPi = std::numbers::pi;
const GasModel kGas = GasModel::polytropic(2.0, 0.5);

BernoulliDatum sine_datum(double base, double amp, int n = 1024) {
  std::vector<double> s(n + 1);
  for (int k = 0; k <= n; ++k) s[k] = base + amp * std::sin(kPi * k / n);
  return BernoulliDatum::from_samples(std::move(s));
}

InflowProfile linear_profile(double m, int n = 64) {
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) w[k] = m * (0.8 + 0.4 * k / n);
  return InflowProfile(std::move(w), m);
}

}  // namespace

TEST_CASE("uniform profile gives a linear kappa") {
  const KappaMap k = build_kappa(InflowProfile::uniform(0.5, 32));
  for (double psi : {0.0, 0.1, 0.25, 0.5}) {
    CHECK(k.value(psi) == doctest::Approx(psi / 0.5).epsilon(1e-12));
    CHECK(k.derivative(psi) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("kappa of a linear profile") {
  const KappaMap k = build_kappa(linear_profile(0.5));
  // 0.8 k + 0.2 k^2 = 0.5
  CHECK(k.value(0.25) == doctest::Approx(0.549509756796392300704).epsilon(1e-12));
  CHECK(k.value(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k.value(0.0) == 0.0);
}

TEST_CASE("kappa round trip and derivative") {
  std::vector<double> w(129);
  for (int k = 0; k <= 128; ++k) w[k] = 0.5 + 0.2 * std::cos(2.0 * k / 128.0);
  const InflowProfile raw = InflowProfile::normalized(w, 0.7);
  const KappaMap k = build_kappa(raw);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 0.7);
  double prev = -1.0;
  for (int n = 0; n < 1000; ++n) {
    const double psi = u(rng);
    const double y = k.value(psi);
    REQUIRE(std::abs(raw.W().integral(y) - psi) <= 1e-9 * 0.7);
    REQUIRE(k.derivative(psi) == doctest::Approx(1.0 / raw.value(y)).epsilon(1e-12));
  }
  for (int n = 0; n <= 100; ++n) {
    const double y = k.value(0.007 * n);
    CHECK(y > prev);
    prev = y;
  }
  // Centered differences of kappa against 1 / W(kappa).
  for (int n = 1; n < 100; ++n) {
    const double psi = 0.007 * n, h = 1e-6;
    const double fd = (k.value(psi + h) - k.value(psi - h)) / (2 * h);
    CHECK(std::abs(fd - k.derivative(psi)) <= 1e-6);
  }
}

TEST_CASE("inflow profile admissibility") {
  CHECK_THROWS_AS(InflowProfile({0.5, 0.5}, 0.6), AdmissibilityError);
  CHECK_THROWS_AS(InflowProfile({0.5, 0.5}, 0.5, 1.2), AdmissibilityError);
  CHECK_THROWS_AS(InflowProfile({1.0, -0.0}, 0.5), AdmissibilityError);
  CHECK_NOTHROW(InflowProfile({0.5, 0.5}, 0.5, 0.8));
  const InflowProfile p = InflowProfile::normalized({1.0, 3.0}, 0.5);
  CHECK(p.W().total_integral() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("constant datum is the irrotational case") {
  const BernoulliProfile B = BernoulliProfile::compose_and_extend(
      BernoulliDatum::constant(1.5), InflowProfile::uniform(0.5, 16), 1.5, kGas);
  for (double s : {-1.0, 0.0, 0.3, 0.5, 2.0}) {
    CHECK(B.value(s) == doctest::Approx(1.5));
    CHECK(B.derivative(s) == 0.0);
  }
  const BernoulliProfile C = BernoulliProfile::constant(1.5);
  CHECK(C.is_constant());
  CHECK(C.value(7.0) == 1.5);
}

TEST_CASE("composition with a uniform profile") {
  const double m = 0.5;
  const BernoulliProfile B = BernoulliProfile::compose_and_extend(
      sine_datum(1.5, 0.01), InflowProfile::uniform(m, 64), 1.5, kGas);
  for (int k = 0; k <= 50; ++k) {
    const double psi = m * k / 50.0;
    CHECK(B.value(psi) == doctest::Approx(1.5 + 0.01 * std::sin(kPi * psi / m)).epsilon(1e-10));
  }
  CHECK(B.derivative(m) == doctest::Approx(-0.01 * kPi / m).epsilon(1e-5));
  CHECK(B.derivative(0.0) == doctest::Approx(0.01 * kPi / m).epsilon(1e-5));
  CHECK(B.derivative(3 * m) == 0.0);
  CHECK(B.derivative(-2 * m) == 0.0);
  CHECK(B.eps() >= 0.01);
}

TEST_CASE("extension shape") {
  const double m = 0.4;
  const BernoulliProfile B = BernoulliProfile::compose_and_extend(
      sine_datum(2.0, 0.02), linear_profile(m), 2.0, kGas);
  const double d0 = B.derivative(0.0), dm = B.derivative(m);
  CHECK(d0 > 0.0);
  CHECK(dm < 0.0);
  // Piecewise-linear slope outside [0, m].
  for (double s : {-0.9 * m, -0.5 * m, -0.1 * m}) {
    CHECK(B.derivative(s) == doctest::Approx(d0 * (s + m) / m).epsilon(1e-12));
  }
  for (double s : {1.1 * m, 1.5 * m, 1.9 * m}) {
    CHECK(B.derivative(s) == doctest::Approx(dm * (2 * m - s) / m).epsilon(1e-12));
  }
  // Continuity at the junctions.
  const double h = 1e-9;
  for (double s : {-m, 0.0, m, 2 * m}) {
    CHECK(std::abs(B.value(s + h) - B.value(s - h)) <= 1e-8);
    CHECK(std::abs(B.derivative(s + h) - B.derivative(s - h)) <= 1e-6);
  }
  // Sign structure and Lipschitz bound on a dense sample.
  double inner = 0.0;
  for (int k = 0; k <= 400; ++k) inner = std::max(inner, std::abs(B.derivative(m * k / 400.0)));
  for (int k = -800; k <= 1600; ++k) {
    const double s = m * k / 400.0;
    const double d = B.derivative(s);
    if (s <= 0.0) CHECK(d >= 0.0);
    if (s >= m) CHECK(d <= 0.0);
    CHECK(std::abs(d) <= inner * (1 + 1e-12));
  }
  CHECK(B.min_value() > 0.0);
  double both_v, both_d;
  B.evaluate(0.17, both_v, both_d);
  CHECK(both_v == B.value(0.17));
  CHECK(both_d == B.derivative(0.17));
}

TEST_CASE("endpoint sign and floor violations are rejected") {
  const InflowProfile W = InflowProfile::uniform(0.5, 16);
  CHECK_THROWS_AS(BernoulliProfile::compose_and_extend(sine_datum(1.5, -0.01), W, 1.5, kGas),
                  AdmissibilityError);
  CHECK_THROWS_AS(BernoulliProfile::compose_and_extend(sine_datum(0.01, 0.05), W, 0.01, kGas),
                  AdmissibilityError);
}

TEST_CASE("datum smallness measure") {
  const BernoulliDatum d = sine_datum(1.5, 0.01);
  CHECK(d.eps(1.5) >= 0.01 * kPi * 0.99);
  CHECK(d.eps(1.5) <= 0.01 * kPi * kPi * 1.01);
  CHECK(BernoulliDatum::constant(1.5).eps(1.5) == 0.0);
  CHECK(d.min() == doctest::Approx(1.5));
  CHECK(d.max() == doctest::Approx(1.51));
}
