#include "subflow/simd/kernels.hpp"

namespace subflow::simd {

namespace {

void stencil_row(const double* const* c, const double* xs, const double* xc, const double* xn,
                 double* y, std::size_t nx) {
  const double* rows[3] = {xs, xc, xn};
  for (std::size_t i = 0; i < nx; ++i) {
    const std::size_t w = (i == 0) ? nx - 1 : i - 1;
    const std::size_t e = (i + 1 == nx) ? 0 : i + 1;
    double acc = 0.0;
    for (int r = 0; r < 3; ++r) {
      const double* x = rows[r];
      acc += c[3 * r][i] * x[w] + c[3 * r + 1][i] * x[i] + c[3 * r + 2][i] * x[e];
    }
    y[i] = acc;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", stencil_row, dot, axpy, xpby, mul};
  return table;
}

}  // namespace subflow::simd
