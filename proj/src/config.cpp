#include "subflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "subflow/error.hpp"

namespace subflow {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "gas.kind",           "gas.gamma",         "gas.A",
    "gas.c",              "nozzle.period",     "nozzle.f1.mean",
    "nozzle.f1.cos",      "nozzle.f1.sin",     "nozzle.f2.mean",
    "nozzle.f2.cos",      "nozzle.f2.sin",     "flow.mass_flux",
    "flow.B0.constant",   "flow.B0.samples",   "flow.B0.eps_warn",
    "flow.Bbar",          "solver.nx",         "solver.ny",
    "solver.tol",         "solver.max_iter",   "solver.relax",
    "solver.theta0_frac", "fixedpoint.tol",    "fixedpoint.max_iter",
    "fixedpoint.damping", "fixedpoint.init",   "sweep.m_values",
    "critical.delta",     "critical.bracket_tol", "critical.m_start",
    "critical.max_probes", "output.path",      "output.format",
};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

struct Entry {
  int line;
  std::string value;
};

class Reader {
 public:
  explicit Reader(std::string_view text) { scan(text); }

  std::vector<ConfigIssue>& errors() { return errors_; }
  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

  std::optional<double> number(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    auto v = parse_number(it->second.value);
    if (!v) error(it->second.line, key + ": expected a number, got '" + it->second.value + "'");
    return v;
  }

  std::optional<int> integer(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const std::string& s = it->second.value;
    int v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
      error(it->second.line, key + ": expected an integer, got '" + s + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::string> string(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string s = it->second.value;
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
      s = s.substr(1, s.size() - 2);
    }
    return s;
  }

  std::optional<std::vector<double>> list(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string_view s = trim(it->second.value);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
      error(it->second.line, key + ": expected a list [a, b, ...]");
      return std::nullopt;
    }
    s = trim(s.substr(1, s.size() - 2));
    std::vector<double> out;
    if (s.empty()) return out;
    while (true) {
      const auto comma = s.find(',');
      const std::string_view item = trim(s.substr(0, comma));
      auto v = parse_number(item);
      if (!v) {
        error(it->second.line, key + ": list element '" + std::string(item) + "' is not a number");
        return std::nullopt;
      }
      out.push_back(*v);
      if (comma == std::string_view::npos) break;
      s = s.substr(comma + 1);
    }
    return out;
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void error(int line, std::string msg) { errors_.push_back({line, std::move(msg)}); }

 private:
  static std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
    return v;
  }

  void scan(std::string_view text) {
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view line =
          text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[' && line.find('=') == std::string_view::npos) {
        if (line.back() != ']') {
          error(line_no, "malformed section header");
          continue;
        }
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (section.empty()) error(line_no, "empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        error(line_no, "expected 'key = value'");
        continue;
      }
      const std::string_view k = trim(line.substr(0, eq));
      const std::string_view v = trim(line.substr(eq + 1));
      if (k.empty()) {
        error(line_no, "missing key");
        continue;
      }
      if (v.empty()) {
        error(line_no, "missing value for '" + std::string(k) + "'");
        continue;
      }
      const std::string key = section.empty() ? std::string(k) : section + "." + std::string(k);
      if (!kKnownKeys.count(key)) {
        error(line_no, "unknown key '" + key + "'");
        continue;
      }
      if (entries_.count(key)) {
        error(line_no, "duplicate key '" + key + "' (first set on line " +
                           std::to_string(entries_[key].line) + ")");
        continue;
      }
      entries_[key] = {line_no, std::string(v)};
      sections_.insert(key.substr(0, key.find('.')));
    }
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> sections_;
  std::vector<ConfigIssue> errors_;
};

FourierSeries read_series(Reader& r, const std::string& prefix, double default_mean) {
  FourierSeries f;
  f.mean = r.number(prefix + ".mean").value_or(default_mean);
  f.cos = r.list(prefix + ".cos").value_or(std::vector<double>{});
  f.sin = r.list(prefix + ".sin").value_or(std::vector<double>{});
  return f;
}

}  // namespace

EulerOptions RunConfig::euler_options() const {
  EulerOptions o;
  o.solver = solver;
  o.fixed_point = fixed_point;
  o.theta0_frac = theta0_frac;
  o.Bbar = Bbar;
  o.eps_warn = eps_warn;
  return o;
}

SweepOptions RunConfig::sweep_options(int threads) const {
  SweepOptions o;
  o.solver = solver;
  o.theta0_frac = theta0_frac;
  o.threads = threads;
  return o;
}

CriticalOptions RunConfig::critical_options() const {
  CriticalOptions o;
  o.solver = solver;
  o.theta0_frac = theta0_frac;
  o.delta = critical_delta;
  o.bracket_tol = critical_bracket_tol;
  o.m_start = critical_m_start;
  o.max_probes = critical_max_probes;
  return o;
}

ConfigParse parse_config_checked(std::string_view text) {
  Reader r(text);
  RunConfig c;
  c.source = std::string(text);

  for (const char* s : {"gas", "flow"}) {
    if (!r.has_section(s)) r.error(0, std::string("missing section '") + s + "'");
  }

  // gas
  const std::string kind = r.string("gas.kind").value_or("polytropic");
  if (kind == "polytropic") {
    const auto gamma = r.number("gas.gamma");
    const auto A = r.number("gas.A");
    if (r.has_section("gas") && !r.has("gas.gamma")) r.error(0, "gas.gamma is required");
    if (r.has_section("gas") && !r.has("gas.A")) r.error(0, "gas.A is required");
    if (r.has("gas.c")) r.error(r.line_of("gas.c"), "gas.c applies only to isothermal gas");
    if (gamma && A) {
      if (!(*gamma > 1.0)) {
        r.error(r.line_of("gas.gamma"), "gamma must exceed 1 for a polytropic gas");
      } else if (!(*A > 0.0)) {
        r.error(r.line_of("gas.A"), "A must be positive");
      } else {
        c.gas = GasModel::polytropic(*gamma, *A);
      }
    }
  } else if (kind == "isothermal") {
    const auto sound = r.number("gas.c");
    if (!r.has("gas.c")) r.error(0, "gas.c is required for an isothermal gas");
    for (const char* k : {"gas.gamma", "gas.A"}) {
      if (r.has(k)) r.error(r.line_of(k), std::string(k) + " applies only to polytropic gas");
    }
    if (sound) {
      if (!(*sound > 0.0)) {
        r.error(r.line_of("gas.c"), "sound speed c must be positive");
      } else {
        c.gas = GasModel::isothermal(*sound);
      }
    }
  } else {
    r.error(r.line_of("gas.kind"), "gas.kind must be 'polytropic' or 'isothermal'");
  }

  // nozzle
  const double period = r.number("nozzle.period").value_or(1.0);
  FourierSeries f1 = read_series(r, "nozzle.f1", 0.0);
  FourierSeries f2 = read_series(r, "nozzle.f2", 1.0);
  if (!(period > 0.0)) {
    r.error(r.line_of("nozzle.period"), "nozzle.period must be positive");
  } else {
    try {
      c.geometry = NozzleGeometry(period, std::move(f1), std::move(f2));
    } catch (const std::exception& e) {
      r.error(0, std::string("nozzle: ") + e.what());
    }
  }

  // flow
  const auto m = r.number("flow.mass_flux");
  if (!r.has("flow.mass_flux")) {
    r.error(0, "flow.mass_flux is required");
  } else if (m) {
    if (!(*m > 0.0)) {
      r.error(r.line_of("flow.mass_flux"), "mass flux must be positive");
    } else {
      c.mass_flux = *m;
    }
  }
  const bool has_const = r.has("flow.B0.constant");
  const bool has_samples = r.has("flow.B0.samples");
  if (has_const == has_samples) {
    r.error(has_samples ? r.line_of("flow.B0.samples") : 0,
            "exactly one of flow.B0.constant and flow.B0.samples must be given");
  } else if (has_const) {
    if (auto v = r.number("flow.B0.constant")) c.B0 = BernoulliDatum::constant(*v);
  } else if (auto s = r.list("flow.B0.samples")) {
    if (s->size() < 2) {
      r.error(r.line_of("flow.B0.samples"), "flow.B0.samples needs at least two values");
    } else {
      c.B0 = BernoulliDatum::from_samples(std::move(*s));
    }
  }
  if (auto floor = c.gas.enthalpy_floor(); floor && (has_const || has_samples)) {
    if (!(c.B0.min() > *floor)) {
      r.error(r.line_of(has_const ? "flow.B0.constant" : "flow.B0.samples"),
              "Bernoulli datum must exceed the enthalpy floor of the gas");
    }
  }
  if (auto v = r.number("flow.Bbar")) c.Bbar = *v;
  c.eps_warn = r.number("flow.B0.eps_warn").value_or(c.eps_warn);

  // solver
  c.nx = r.integer("solver.nx").value_or(c.nx);
  c.ny = r.integer("solver.ny").value_or(c.ny);
  if (c.nx < 8) r.error(r.line_of("solver.nx"), "solver.nx must be at least 8");
  if (c.ny < 8) r.error(r.line_of("solver.ny"), "solver.ny must be at least 8");
  c.solver.tol = r.number("solver.tol").value_or(c.solver.tol);
  c.solver.max_iter = r.integer("solver.max_iter").value_or(c.solver.max_iter);
  c.solver.relax = r.number("solver.relax").value_or(c.solver.relax);
  c.theta0_frac = r.number("solver.theta0_frac").value_or(c.theta0_frac);
  if (!(c.solver.tol > 0.0)) r.error(r.line_of("solver.tol"), "solver.tol must be positive");
  if (c.solver.max_iter < 1) r.error(r.line_of("solver.max_iter"), "solver.max_iter must be >= 1");
  if (!(c.solver.relax > 0.0 && c.solver.relax <= 1.0)) {
    r.error(r.line_of("solver.relax"), "solver.relax must lie in (0, 1]");
  }
  if (!(c.theta0_frac > 0.0 && c.theta0_frac <= 1.0)) {
    r.error(r.line_of("solver.theta0_frac"), "solver.theta0_frac must lie in (0, 1]");
  }

  // fixedpoint
  c.fixed_point.tol = r.number("fixedpoint.tol").value_or(c.fixed_point.tol);
  c.fixed_point.max_iter = r.integer("fixedpoint.max_iter").value_or(c.fixed_point.max_iter);
  if (auto d = r.number("fixedpoint.damping")) {
    if (!(*d > 0.0 && *d <= 1.0)) {
      r.error(r.line_of("fixedpoint.damping"), "fixedpoint.damping must lie in (0, 1]");
    }
    c.fixed_point.damping = *d;
  }
  if (auto init = r.string("fixedpoint.init")) {
    if (*init == "potential") {
      c.fixed_point.init = InitialProfile::potential;
    } else if (*init == "uniform") {
      c.fixed_point.init = InitialProfile::uniform;
    } else {
      r.error(r.line_of("fixedpoint.init"), "fixedpoint.init must be 'potential' or 'uniform'");
    }
  }
  if (!(c.fixed_point.tol > 0.0)) r.error(r.line_of("fixedpoint.tol"), "fixedpoint.tol must be positive");
  if (c.fixed_point.max_iter < 1) {
    r.error(r.line_of("fixedpoint.max_iter"), "fixedpoint.max_iter must be >= 1");
  }

  // sweep / critical
  if (auto v = r.list("sweep.m_values")) {
    c.sweep_m = std::move(*v);
    for (std::size_t k = 0; k < c.sweep_m.size(); ++k) {
      if (!(c.sweep_m[k] >= 0.0) || (k > 0 && !(c.sweep_m[k] > c.sweep_m[k - 1]))) {
        r.error(r.line_of("sweep.m_values"),
                "sweep.m_values must be nonnegative and strictly increasing");
        break;
      }
    }
  }
  c.critical_delta = r.number("critical.delta").value_or(c.critical_delta);
  c.critical_bracket_tol = r.number("critical.bracket_tol").value_or(c.critical_bracket_tol);
  c.critical_m_start = r.number("critical.m_start").value_or(c.critical_m_start);
  c.critical_max_probes = r.integer("critical.max_probes").value_or(c.critical_max_probes);
  if (!(c.critical_delta > 0.0 && c.critical_delta < 1.0)) {
    r.error(r.line_of("critical.delta"), "critical.delta must lie in (0, 1)");
  }
  if (!(c.critical_bracket_tol > 0.0)) {
    r.error(r.line_of("critical.bracket_tol"), "critical.bracket_tol must be positive");
  }
  if (c.critical_m_start < 0.0) {
    r.error(r.line_of("critical.m_start"), "critical.m_start must be nonnegative");
  }

  // output
  c.output_path = r.string("output.path").value_or("");
  c.output_format = r.string("output.format").value_or("csv");
  if (c.output_format != "csv") r.error(r.line_of("output.format"), "output.format must be 'csv'");

  ConfigParse out;
  out.errors = std::move(r.errors());
  std::stable_sort(out.errors.begin(), out.errors.end(),
                   [](const ConfigIssue& a, const ConfigIssue& b) { return a.line < b.line; });
  if (out.errors.empty()) out.config = std::move(c);
  return out;
}

RunConfig parse_config(std::string_view text) {
  ConfigParse p = parse_config_checked(text);
  if (p.config) return std::move(*p.config);
  std::ostringstream os;
  for (std::size_t k = 0; k < p.errors.size(); ++k) {
    if (k) os << '\n';
    if (p.errors[k].line > 0) os << "line " << p.errors[k].line << ": ";
    os << p.errors[k].message;
  }
  throw ConfigError(os.str());
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : cfg.source) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace subflow
