#include "lagns/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "lagns/errors.hpp"

namespace lagns {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text, int line) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(std::string(key) + ": expected a finite number, got '" + std::string(text) + "'",
                      line);
  }
  return value;
}

int to_int(std::string_view key, std::string_view text, int line) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'",
                      line);
  }
  return value;
}

bool to_bool(std::string_view key, std::string_view text, int line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'",
                    line);
}

std::vector<double> to_list(std::string_view key, std::string_view text, int line) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (item.empty()) throw ConfigError(std::string(key) + ": empty list entry", line);
    out.push_back(to_double(key, item, line));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError(std::string(key) + ": list is empty", line);
  return out;
}

// Raw values collected by the parser; resolved into a RunConfig afterwards
// because some keys (grid.dx, diagnostics.probe_x) depend on others.
struct Pending {
  RunConfig config;
  double R = 1.0, c_v = 1.0, mu = 1.0, kappa = 1.0, beta = 1.0, gamma = 0.0;
  std::optional<int> cells;
  std::optional<double> dx;
  std::optional<double> probe_x;
};

template <class T>
T wrap(std::string_view key, int line, const std::function<T()>& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(std::string(key) + ": " + e.what(), line);
  }
}

using Setter = std::function<void(Pending&, std::string_view key, std::string_view value, int line)>;

const std::vector<std::pair<std::string_view, Setter>>& setters() {
  static const std::vector<std::pair<std::string_view, Setter>> table = {
      {"problem.variant",
       [](Pending& p, auto k, auto v, int l) {
         p.config.problem.variant =
             wrap<ProblemVariant>(k, l, [&] { return parse_problem_variant(v); });
       }},
      {"problem.length",
       [](Pending& p, auto k, auto v, int l) { p.config.problem.truncation_length = to_double(k, v, l); }},
      {"grid.cells", [](Pending& p, auto k, auto v, int l) { p.cells = to_int(k, v, l); }},
      {"grid.dx", [](Pending& p, auto k, auto v, int l) { p.dx = to_double(k, v, l); }},
      {"gas.R", [](Pending& p, auto k, auto v, int l) { p.R = to_double(k, v, l); }},
      {"gas.cv", [](Pending& p, auto k, auto v, int l) { p.c_v = to_double(k, v, l); }},
      {"gas.mu", [](Pending& p, auto k, auto v, int l) { p.mu = to_double(k, v, l); }},
      {"gas.kappa", [](Pending& p, auto k, auto v, int l) { p.kappa = to_double(k, v, l); }},
      {"gas.beta", [](Pending& p, auto k, auto v, int l) { p.beta = to_double(k, v, l); }},
      {"gas.gamma", [](Pending& p, auto k, auto v, int l) { p.gamma = to_double(k, v, l); }},
      {"initial.profile",
       [](Pending& p, auto k, auto v, int l) {
         p.config.profile.kind = wrap<ProfileKind>(k, l, [&] { return parse_profile_kind(v); });
       }},
      {"initial.field",
       [](Pending& p, auto k, auto v, int l) {
         p.config.profile.field = wrap<Field>(k, l, [&] { return parse_field(v); });
       }},
      {"initial.amplitude",
       [](Pending& p, auto k, auto v, int l) { p.config.profile.amplitude = to_double(k, v, l); }},
      {"initial.width",
       [](Pending& p, auto k, auto v, int l) { p.config.profile.width = to_double(k, v, l); }},
      {"initial.center",
       [](Pending& p, auto k, auto v, int l) { p.config.profile.center = to_double(k, v, l); }},
      {"initial.theta_min",
       [](Pending& p, auto k, auto v, int l) { p.config.profile.theta_min = to_double(k, v, l); }},
      {"scheme.dt_initial",
       [](Pending& p, auto k, auto v, int l) { p.config.scheme.dt_initial = to_double(k, v, l); }},
      {"scheme.cfl_safety",
       [](Pending& p, auto k, auto v, int l) { p.config.scheme.cfl_safety = to_double(k, v, l); }},
      {"scheme.dt_min",
       [](Pending& p, auto k, auto v, int l) { p.config.scheme.dt_min = to_double(k, v, l); }},
      {"scheme.max_newton_lag",
       [](Pending& p, auto k, auto v, int l) { p.config.scheme.max_newton_lag = to_int(k, v, l); }},
      {"scheme.positivity_floor",
       [](Pending& p, auto k, auto v, int l) { p.config.scheme.positivity_floor = to_double(k, v, l); }},
      {"scheme.max_rejections",
       [](Pending& p, auto k, auto v, int l) { p.config.scheme.max_rejections = to_int(k, v, l); }},
      {"run.t_end", [](Pending& p, auto k, auto v, int l) { p.config.t_end = to_double(k, v, l); }},
      {"run.cadence", [](Pending& p, auto k, auto v, int l) { p.config.cadence = to_int(k, v, l); }},
      {"output.dir", [](Pending& p, auto, auto v, int) { p.config.output_dir = std::string(v); }},
      {"diagnostics.p_list",
       [](Pending& p, auto k, auto v, int l) { p.config.p_list = to_list(k, v, l); }},
      {"diagnostics.probe_cell",
       [](Pending& p, auto k, auto v, int l) { p.config.probe_cell = to_int(k, v, l); }},
      {"diagnostics.probe_x", [](Pending& p, auto k, auto v, int l) { p.probe_x = to_double(k, v, l); }},
      {"diagnostics.jensen",
       [](Pending& p, auto k, auto v, int l) { p.config.check_jensen = to_bool(k, v, l); }},
      {"verify.case", [](Pending& p, auto, auto v, int) { p.config.verify.manufactured = std::string(v); }},
      {"verify.refinement",
       [](Pending& p, auto k, auto v, int l) {
         p.config.verify.refinement = wrap<Refinement>(k, l, [&] { return parse_refinement(v); });
       }},
      {"verify.levels", [](Pending& p, auto k, auto v, int l) { p.config.verify.levels = to_int(k, v, l); }},
      {"verify.base_cells",
       [](Pending& p, auto k, auto v, int l) { p.config.verify.base_cells = to_int(k, v, l); }},
      {"verify.base_dt",
       [](Pending& p, auto k, auto v, int l) { p.config.verify.base_dt = to_double(k, v, l); }},
      {"verify.oracle_dt",
       [](Pending& p, auto k, auto v, int l) { p.config.verify.oracle_dt = to_double(k, v, l); }},
      {"verify.oracle_ratio",
       [](Pending& p, auto k, auto v, int l) { p.config.verify.oracle_ratio = to_double(k, v, l); }},
      {"verify.lengths",
       [](Pending& p, auto k, auto v, int l) { p.config.verify.lengths = to_list(k, v, l); }},
      {"verify.interior_fraction",
       [](Pending& p, auto k, auto v, int l) { p.config.verify.interior_fraction = to_double(k, v, l); }},
  };
  return table;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> out;
    for (const auto& [key, setter] : setters()) out.push_back(key);
    return out;
  }();
  return keys;
}

ProblemSetup RunConfig::setup() const { return {problem, n_cells, make_profiles(profile)}; }

RunConfig parse_config(std::string_view text) {
  std::map<std::string_view, const Setter*> lookup;
  for (const auto& [key, setter] : setters()) lookup.emplace(key, &setter);

  Pending p;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError(std::string(key) + ": missing value", line_no);
    const auto it = lookup.find(key);
    if (it == lookup.end()) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("key '" + std::string(key) + "' given twice", line_no);
    }
    (*it->second)(p, key, value, line_no);
  }

  RunConfig& c = p.config;
  if (!(p.beta >= 0.0)) {
    throw ConfigError("gas.beta = " + fmt(p.beta) + ": beta must be >= 0, and > 0 for runs");
  }
  if (p.beta == 0.0) {
    throw ConfigError(
        "gas.beta = 0: runs require beta > 0 (global existence holds for gamma = 0, beta > 0)");
  }
  if (p.gamma != 0.0) {
    throw ConfigError("gas.gamma = " + fmt(p.gamma) + ": only gamma = 0 is supported");
  }
  for (auto [name, value] : {std::pair{"gas.R", p.R}, {"gas.cv", p.c_v}, {"gas.mu", p.mu},
                             {"gas.kappa", p.kappa}}) {
    if (!(value > 0.0)) throw ConfigError(std::string(name) + " = " + fmt(value) + ": must be > 0");
  }
  c.gas = GasParams(p.R, p.c_v, p.mu, p.kappa, p.beta, p.gamma);

  const double L = c.problem.truncation_length;
  if (!(L > 0.0)) throw ConfigError("problem.length = " + fmt(L) + ": must be > 0");
  if (p.cells && p.dx) throw ConfigError("grid.cells and grid.dx are mutually exclusive");
  if (p.cells) {
    c.n_cells = *p.cells;
  } else {
    const double dx = p.dx.value_or(0.05);
    if (!(dx > 0.0)) throw ConfigError("grid.dx = " + fmt(dx) + ": must be > 0");
    const double exact = L / dx;
    c.n_cells = static_cast<int>(std::lround(exact));
    if (std::fabs(c.n_cells - exact) > 1e-9 * exact) {
      throw ConfigError("grid.dx = " + fmt(dx) + " does not divide problem.length = " + fmt(L));
    }
  }
  if (c.n_cells < 4) throw ConfigError("grid.cells = " + std::to_string(c.n_cells) + ": must be >= 4");

  if (p.probe_x) {
    const Grid grid(c.problem, c.n_cells);
    const double x = *p.probe_x;
    if (x < grid.x_left() || x > grid.x_right()) {
      throw ConfigError("diagnostics.probe_x = " + fmt(x) + " lies outside the window");
    }
    c.probe_x_cell = std::min(c.n_cells - 1, static_cast<int>((x - grid.x_left()) / grid.dx()));
  }

  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const RunConfig& c) {
  try {
    c.scheme.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(c.t_end > 0.0)) throw ConfigError("run.t_end = " + fmt(c.t_end) + ": must be > 0");
  if (c.cadence < 1) throw ConfigError("run.cadence = " + std::to_string(c.cadence) + ": must be >= 1");
  if (c.output_dir.empty()) throw ConfigError("output.dir must not be empty");
  for (double q : c.p_list) {
    if (!(q >= 1.0)) throw ConfigError("diagnostics.p_list: exponent " + fmt(q) + " must be >= 1");
  }
  for (auto [name, cell] : {std::pair{"diagnostics.probe_cell", c.probe_cell},
                            {"diagnostics.probe_x", c.probe_x_cell}}) {
    if (cell < -1 || cell >= c.n_cells) {
      throw ConfigError(std::string(name) + ": cell " + std::to_string(cell) + " outside [0, " +
                        std::to_string(c.n_cells) + ")");
    }
  }

  const ProfileSpec& s = c.profile;
  if (!(s.width > 0.0)) throw ConfigError("initial.width = " + fmt(s.width) + ": must be > 0");
  if (s.kind == ProfileKind::GaussianBump && s.field != Field::U && !(s.amplitude > -1.0)) {
    throw ConfigError("initial.amplitude = " + fmt(s.amplitude) + ": " + std::string(to_string(s.field)) +
                      " = 1 + amplitude * bump must stay positive, so amplitude must be > -1");
  }
  if (s.kind == ProfileKind::ColdSpot && !(s.theta_min > 0.0)) {
    throw ConfigError("initial.theta_min = " + fmt(s.theta_min) + ": must be > 0");
  }
  if (c.problem.variant == ProblemVariant::Periodic) {
    throw ConfigError("problem.variant = periodic is reserved for manufactured-solution studies");
  }

  const VerifyConfig& v = c.verify;
  if (v.levels < 3) throw ConfigError("verify.levels must be >= 3");
  if (v.base_cells < 4) throw ConfigError("verify.base_cells must be >= 4");
  if (!(v.base_dt > 0.0)) throw ConfigError("verify.base_dt must be > 0");
  if (!(v.oracle_dt > 0.0)) throw ConfigError("verify.oracle_dt must be > 0");
  if (!(v.oracle_ratio >= 1.0)) throw ConfigError("verify.oracle_ratio must be >= 1");
  if (!(v.interior_fraction > 0.0 && v.interior_fraction <= 1.0)) {
    throw ConfigError("verify.interior_fraction must lie in (0, 1]");
  }
  try {
    manufactured_case(v.manufactured);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("verify.case: ") + e.what());
  }
  for (double L : v.lengths) {
    if (!(L > 0.0)) throw ConfigError("verify.lengths: entries must be > 0");
  }

  try {
    const Grid grid(c.problem, c.n_cells);
    build_initial_state(grid, make_profiles(s));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial data rejected on the configured grid: ") + e.what());
  }
}

}  // namespace lagns
