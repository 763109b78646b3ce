#pragma once

#include <array>
#include <span>
#include <vector>

#include "subflow/simd/kernels.hpp"

namespace subflow {

/// Stencil direction, ordered south-west to north-east.
enum class Dir { sw = 0, s, se, w, c, e, nw, n, ne };

/// 9-point operator on `rows` unknown rows of a grid that is periodic in i.
/// Rows beyond the first and last are homogeneous Dirichlet (zero).
class StencilMatrix {
 public:
  StencilMatrix(int nx, int rows);

  int nx() const { return nx_; }
  int rows() const { return rows_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * rows_; }

  double& at(Dir d, int i, int row) { return coef_[static_cast<int>(d)][index(i, row)]; }
  double at(Dir d, int i, int row) const { return coef_[static_cast<int>(d)][index(i, row)]; }
  void set_zero();

  void apply(std::span<const double> x, std::span<double> y,
             const simd::KernelTable& k = simd::active_kernels()) const;
  std::vector<double> diagonal() const { return coef_[static_cast<int>(Dir::c)]; }

 private:
  std::size_t index(int i, int row) const { return static_cast<std::size_t>(row) * nx_ + i; }
  int nx_;
  int rows_;
  std::array<std::vector<double>, 9> coef_;
  std::vector<double> zero_row_;
};

struct PcgResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> history;
};

/// Jacobi-preconditioned conjugate gradients for a symmetric positive definite
/// stencil matrix. x holds the initial guess and receives the solution; stops
/// when ||b - A x|| <= rel_tol ||b||.
PcgResult pcg_solve(const StencilMatrix& A, std::span<const double> b, std::span<double> x,
                    double rel_tol, int max_iter,
                    const simd::KernelTable& k = simd::active_kernels());

}  // namespace subflow
