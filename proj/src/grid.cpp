#include "subflow/grid.hpp"

#include <algorithm>
#include <string>

#include "subflow/error.hpp"

namespace subflow {

Grid::Grid(int nx_, int ny_, double period_, int shift_)
    : nx(nx_), ny(ny_), period(period_), shift(shift_) {
  if (nx < 8 || ny < 8) {
    throw DomainError("grid needs at least 8 cells per direction (got " + std::to_string(nx) +
                      " x " + std::to_string(ny) + ")");
  }
  if (!(period > 0.0)) throw DomainError("grid period must be positive");
}

double NodalField::max() const { return *std::max_element(v_.begin(), v_.end()); }
double NodalField::min() const { return *std::min_element(v_.begin(), v_.end()); }

NodalField shift_columns(const NodalField& field, int cells) {
  NodalField out = field;
  for (int j = 0; j <= field.ny(); ++j) {
    for (int i = 0; i < field.nx(); ++i) out(i, j) = field(i + cells, j);
  }
  return out;
}

}  // namespace subflow
