#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "subflow/simd/kernels.hpp"

using namespace subflow::simd;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    REQUIRE(std::abs(a[k] - b[k]) <= tol * (1.0 + std::abs(a[k])));
  }
}

}  // namespace

TEST_CASE("scalar stencil row against a direct loop") {
  std::mt19937_64 rng(1);
  const std::size_t nx = 7;
  std::vector<std::vector<double>> coef(9);
  for (auto& c : coef) c = random_vector(nx, rng);
  const auto s = random_vector(nx, rng), c = random_vector(nx, rng), n = random_vector(nx, rng);
  const double* cp[9];
  for (int d = 0; d < 9; ++d) cp[d] = coef[d].data();
  std::vector<double> y(nx);
  scalar_kernels().stencil_row(cp, s.data(), c.data(), n.data(), y.data(), nx);
  const std::vector<double>* rows[3] = {&s, &c, &n};
  for (std::size_t i = 0; i < nx; ++i) {
    double ref = 0.0;
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const std::size_t w = (i + nx + di) % nx;
        ref += coef[3 * (dj + 1) + (di + 1)][i] * (*rows[dj + 1])[w];
      }
    }
    CHECK(y[i] == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("scalar vector kernels") {
  const std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  CHECK(scalar_kernels().dot(a.data(), b.data(), 3) == 32.0);
  std::vector<double> y = {1, 1, 1};
  scalar_kernels().axpy(2.0, a.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3, 5, 7});
  scalar_kernels().xpby(a.data(), 0.5, y.data(), 3);
  CHECK(y == std::vector<double>{2.5, 4.5, 6.5});
  std::vector<double> out(3);
  scalar_kernels().mul(a.data(), b.data(), out.data(), 3);
  CHECK(out == std::vector<double>{4, 10, 18});
}

TEST_CASE("vector variant matches the scalar reference") {
  const KernelTable* v = avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  const KernelTable& s = scalar_kernels();
  std::mt19937_64 rng(2);
  for (std::size_t nx : {3u, 4u, 5u, 8u, 13u, 64u, 131u}) {
    std::vector<std::vector<double>> coef(9);
    for (auto& c : coef) c = random_vector(nx, rng);
    const double* cp[9];
    for (int d = 0; d < 9; ++d) cp[d] = coef[d].data();
    const auto south = random_vector(nx, rng), centre = random_vector(nx, rng),
               north = random_vector(nx, rng);
    std::vector<double> ys(nx), yv(nx);
    s.stencil_row(cp, south.data(), centre.data(), north.data(), ys.data(), nx);
    v->stencil_row(cp, south.data(), centre.data(), north.data(), yv.data(), nx);
    check_close(ys, yv, 1e-13);

    const auto a = random_vector(nx, rng), b = random_vector(nx, rng);
    CHECK(v->dot(a.data(), b.data(), nx) ==
          doctest::Approx(s.dot(a.data(), b.data(), nx)).epsilon(1e-13));

    auto y1 = b, y2 = b;
    s.axpy(0.3, a.data(), y1.data(), nx);
    v->axpy(0.3, a.data(), y2.data(), nx);
    check_close(y1, y2, 1e-15);

    y1 = b;
    y2 = b;
    s.xpby(a.data(), -1.7, y1.data(), nx);
    v->xpby(a.data(), -1.7, y2.data(), nx);
    check_close(y1, y2, 1e-15);

    std::vector<double> m1(nx), m2(nx);
    s.mul(a.data(), b.data(), m1.data(), nx);
    v->mul(a.data(), b.data(), m2.data(), nx);
    check_close(m1, m2, 0.0);
  }
}

TEST_CASE("active table is one of the variants") {
  const KernelTable& k = active_kernels();
  const KernelTable* v = avx2_kernels();
  CHECK((&k == &scalar_kernels() || &k == v));
}
