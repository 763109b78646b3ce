#include "subflow/linear_solver.hpp"

#include <cmath>

#include "subflow/error.hpp"

namespace subflow {

StencilMatrix::StencilMatrix(int nx, int rows) : nx_(nx), rows_(rows), zero_row_(nx, 0.0) {
  if (nx < 3 || rows < 1) throw DomainError("stencil matrix needs nx >= 3 and a row");
  for (auto& c : coef_) c.assign(size(), 0.0);
}

void StencilMatrix::set_zero() {
  for (auto& c : coef_) std::fill(c.begin(), c.end(), 0.0);
}

void StencilMatrix::apply(std::span<const double> x, std::span<double> y,
                          const simd::KernelTable& k) const {
  const auto n = static_cast<std::size_t>(nx_);
  for (int r = 0; r < rows_; ++r) {
    const std::size_t off = static_cast<std::size_t>(r) * n;
    const double* c[9];
    for (int d = 0; d < 9; ++d) c[d] = coef_[d].data() + off;
    const double* south = r > 0 ? x.data() + off - n : zero_row_.data();
    const double* north = r + 1 < rows_ ? x.data() + off + n : zero_row_.data();
    k.stencil_row(c, south, x.data() + off, north, y.data() + off, n);
  }
}

PcgResult pcg_solve(const StencilMatrix& A, std::span<const double> b, std::span<double> x,
                    double rel_tol, int max_iter, const simd::KernelTable& k) {
  const std::size_t n = A.size();
  PcgResult out;
  const double bnorm = std::sqrt(k.dot(b.data(), b.data(), n));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    out.converged = true;
    return out;
  }

  std::vector<double> inv_diag = A.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw LinearSolverError("stencil matrix has a nonpositive diagonal entry");
    d = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  A.apply(x, r, k);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  k.mul(inv_diag.data(), r.data(), z.data(), n);
  p = z;
  double rz = k.dot(r.data(), z.data(), n);

  for (int it = 0; it <= max_iter; ++it) {
    const double rnorm = std::sqrt(k.dot(r.data(), r.data(), n)) / bnorm;
    out.history.push_back(rnorm);
    out.iterations = it;
    out.relative_residual = rnorm;
    if (rnorm <= rel_tol) {
      out.converged = true;
      return out;
    }
    if (it == max_iter) break;
    A.apply(p, q, k);
    const double pq = k.dot(p.data(), q.data(), n);
    if (!(pq > 0.0)) break;  // breakdown: matrix not SPD in this direction
    const double alpha = rz / pq;
    k.axpy(alpha, p.data(), x.data(), n);
    k.axpy(-alpha, q.data(), r.data(), n);
    k.mul(inv_diag.data(), r.data(), z.data(), n);
    const double rz_new = k.dot(r.data(), z.data(), n);
    k.xpby(z.data(), rz_new / rz, p.data(), n);
    rz = rz_new;
  }
  return out;
}

}  // namespace subflow
