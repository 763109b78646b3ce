#pragma once

#include <cstddef>
#include <vector>

namespace subflow {

/// Uniform grid on the computational rectangle [0, L) x [0, 1], periodic in xi.
///
/// Nodes are i = 0..nx-1 (the node at xi = L is the periodic image of i = 0)
/// and j = 0..ny, with Dirichlet rows j = 0 (lower wall) and j = ny (upper
/// wall). A nonzero shift places node i at xi = (i + shift) * hxi, i.e. the
/// same period viewed through a window starting at a different section.
struct Grid {
  int nx = 0;
  int ny = 0;
  double period = 1.0;
  int shift = 0;

  Grid() = default;
  Grid(int nx_, int ny_, double period_, int shift_ = 0);

  double hxi() const { return period / nx; }
  double heta() const { return 1.0 / ny; }
  double xi(int i) const { return (i + shift) * hxi(); }
  double eta(int j) const { return j * heta(); }
  int wrap(int i) const { return ((i % nx) + nx) % nx; }
  /// Column lying on the section x1 = 0 (mod L).
  int inflow_column() const { return wrap(-shift); }
  std::size_t nodes() const { return static_cast<std::size_t>(nx) * (ny + 1); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(wrap(i));
  }
};

/// Nodal values on a Grid, row-major in j with periodic i.
class NodalField {
 public:
  NodalField() = default;
  explicit NodalField(const Grid& g, double fill = 0.0)
      : nx_(g.nx), ny_(g.ny), v_(g.nodes(), fill) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double& operator()(int i, int j) { return v_[index(i, j)]; }
  double operator()(int i, int j) const { return v_[index(i, j)]; }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  double max() const;
  double min() const;

 private:
  std::size_t index(int i, int j) const {
    const int w = ((i % nx_) + nx_) % nx_;
    return static_cast<std::size_t>(j) * nx_ + static_cast<std::size_t>(w);
  }
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> v_;
};

/// Copies `field` to the window shifted by `cells` columns: out(i, j) = field(i + cells, j).
NodalField shift_columns(const NodalField& field, int cells);

}  // namespace subflow
