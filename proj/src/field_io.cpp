#include "subflow/field_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subflow {

namespace {

[[noreturn]] void io_failure(const std::string& what, const std::string& path) {
  throw std::runtime_error(what + " '" + path + "': " + std::strerror(errno));
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<FieldRow> field_rows(const StreamField& stream, const FlowState& flow,
                                 const NozzleGeometry& geom) {
  const Grid& g = stream.grid;
  std::vector<FieldRow> rows;
  rows.reserve(static_cast<std::size_t>(g.nx + 1) * (g.ny + 1));
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) {
      const MappedPoint p = geom.map_to_physical(g.xi(i), g.eta(j));
      // + 0.0 turns negative zeros into zeros
      rows.push_back({p.x1 + 0.0, p.x2 + 0.0, stream.psi(i, j) + 0.0, flow.rho(i, j), flow.u(i, j) + 0.0,
                      flow.v(i, j) + 0.0, flow.mach(i, j)});
    }
  }
  return rows;
}

void write_fields(const std::string& path, const StreamField& stream, const FlowState& flow,
                  const NozzleGeometry& geom, const Metadata& meta) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) io_failure("cannot open", path);
  std::fprintf(f, "%s\n", kFieldHeader);
  for (const FieldRow& r : field_rows(stream, flow, geom)) {
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.x1, r.x2, r.psi, r.rho, r.u,
                 r.v, r.mach);
  }
  const bool bad = std::ferror(f);
  if (std::fclose(f) != 0 || bad) io_failure("cannot write", path);
  write_metadata(path + ".meta", meta);
}

std::vector<FieldRow> read_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_failure("cannot open", path);
  std::string line;
  if (!std::getline(in, line) || line != kFieldHeader) {
    throw std::runtime_error("'" + path + "' does not start with the field header");
  }
  std::vector<FieldRow> rows;
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    double v[7];
    const char* p = line.c_str();
    for (int k = 0; k < 7; ++k) {
      char* end = nullptr;
      v[k] = std::strtod(p, &end);
      if (end == p || (k < 6 && *end != ',') || (k == 6 && *end != '\0')) {
        throw std::runtime_error("'" + path + "' line " + std::to_string(n) + ": malformed row");
      }
      p = end + 1;
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return rows;
}

void write_metadata(const std::string& path, const Metadata& meta) {
  std::ofstream out(path);
  if (!out) io_failure("cannot open", path);
  for (const auto& [k, v] : meta) out << k << '=' << v << '\n';
  out.flush();
  if (!out) io_failure("cannot write", path);
}

Metadata read_metadata(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_failure("cannot open", path);
  Metadata meta;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    meta.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return meta;
}

}  // namespace subflow
