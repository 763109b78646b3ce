// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "subflow/simd/kernels.hpp"

namespace subflow::simd::avx2 {

namespace {

inline double edge_point(const double* const* c, const double* const* rows, std::size_t i,
                         std::size_t nx) {
  const std::size_t w = (i == 0) ? nx - 1 : i - 1;
  const std::size_t e = (i + 1 == nx) ? 0 : i + 1;
  double acc = 0.0;
  for (int r = 0; r < 3; ++r) {
    const double* x = rows[r];
    acc += c[3 * r][i] * x[w] + c[3 * r + 1][i] * x[i] + c[3 * r + 2][i] * x[e];
  }
  return acc;
}

void stencil_row(const double* const* c, const double* xs, const double* xc, const double* xn,
                 double* y, std::size_t nx) {
  const double* rows[3] = {xs, xc, xn};
  y[0] = edge_point(c, rows, 0, nx);
  std::size_t i = 1;
  for (; i + 4 <= nx - 1; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int r = 0; r < 3; ++r) {
      const double* x = rows[r];
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(c[3 * r] + i), _mm256_loadu_pd(x + i - 1), acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(c[3 * r + 1] + i), _mm256_loadu_pd(x + i), acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(c[3 * r + 2] + i), _mm256_loadu_pd(x + i + 1), acc);
    }
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i < nx; ++i) y[i] = edge_point(c, rows, i, nx);
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
  const __m256d b = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(b, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"avx2", stencil_row, dot, axpy, xpby, mul};
  return t;
}

}  // namespace subflow::simd::avx2
