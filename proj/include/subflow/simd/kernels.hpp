#pragma once

#include <cstddef>

namespace subflow::simd {

/// Inner loops of the iterative linear solver. Every variant computes the same
/// quantities; vector variants may differ from the scalar reference only by
/// floating-point reassociation and fused multiply-adds.
struct KernelTable {
  const char* name;

  /// One row of a periodic 9-point stencil product:
  ///   y[i] = sum_{dj,di in {-1,0,1}} coef[3 (dj+1) + (di+1)][i] * x_dj[(i+di) mod nx]
  /// with x_-1 = south, x_0 = centre, x_+1 = north. Requires nx >= 3.
  void (*stencil_row)(const double* const* coef, const double* south, const double* centre,
                      const double* north, double* y, std::size_t nx);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y = x + beta y
  void (*xpby)(const double* x, double beta, double* y, std::size_t n);
  /// out = a * b (elementwise)
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();

/// AVX2/FMA variant, or nullptr when it was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

/// Variant used by the solvers: the widest supported one, unless the
/// environment variable SUBFLOW_KERNELS names another ("scalar" or "avx2").
const KernelTable& active_kernels();

}  // namespace subflow::simd
