#pragma once

#include <string>
#include <utility>
#include <vector>

#include "subflow/elliptic_solver.hpp"
#include "subflow/flow_state.hpp"
#include "subflow/geometry.hpp"

namespace subflow {

/// Ordered key=value lines of a sidecar file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct FieldRow {
  double x1, x2, psi, rho, u, v, mach;
};

inline constexpr const char* kFieldHeader = "x1,x2,psi,rho,u,v,mach";

/// Rows for j = 0..ny, i = 0..nx (the last column repeats i = 0 at x1 + L).
std::vector<FieldRow> field_rows(const StreamField& stream, const FlowState& flow,
                                 const NozzleGeometry& geom);

/// Writes the CSV (17 significant digits) and `<path>.meta`. Throws
/// std::runtime_error with the system message on I/O failure.
void write_fields(const std::string& path, const StreamField& stream, const FlowState& flow,
                  const NozzleGeometry& geom, const Metadata& meta);

std::vector<FieldRow> read_fields(const std::string& path);

void write_metadata(const std::string& path, const Metadata& meta);
Metadata read_metadata(const std::string& path);

/// Shortest round-trip decimal form (17 significant digits).
std::string format_double(double v);

}  // namespace subflow
