#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace nonkp::cli {
namespace {

const std::string two_pi = "6.283185307179586";

// Every accepted key with its default. An empty default marks a key that has
// no default and must be given when the section is needed.
const std::vector<std::pair<std::string, std::string>> schema{
    {"grid.Nx", ""},
    {"grid.Ny", ""},
    {"grid.Lx", two_pi},
    {"grid.Ly", two_pi},
    {"run.t_end", "1"},
    {"run.dt", "auto"},
    {"run.scheme", "diagonal-ifrk4"},
    {"run.snapshot_stride", "1"},
    {"run.diagnostics_stride", "1"},
    {"run.threads", "1"},
    {"initial.kind", "random"},
    {"initial.amplitude", "0.05"},
    {"initial.max_mode", "4"},
    {"initial.seed", "1"},
    {"initial.j", "1"},
    {"initial.k", "1"},
    {"dispersion.max_index", "10"},
    {"dispersion.tolerance", "1e-10"},
    {"mass.epsilons", "0.01, 0.02, 0.04"},
    {"mass.tolerance", "1e-4"},
    {"mass.slope_tolerance", "0.3"},
    {"bourgain.kind", "psi"},
    {"bourgain.b", "0.6"},
    {"bourgain.eps", "0.1"},
    {"bourgain.s", "1"},
    {"bourgain.T_min", "0.1"},
    {"bourgain.T_max", "10"},
    {"bourgain.points", "9"},
    {"bourgain.nt", "32768"},
    {"bourgain.tolerance", "0.05"},
    {"bourgain.branch", "1"},
    {"bourgain.j", "1"},
    {"bourgain.k", "1"},
    {"bourgain.width", "0.5"},
    {"bourgain.center", "0"},
    {"bourgain.detuning", "20"},
    {"dn.h0", "1"},
    {"dn.N", "64"},
    {"dn.L", two_pi},
    {"dn.k", "1"},
    {"dn.orders", "1, 2, 3"},
    {"dn.amplitudes", "0.01, 0.02, 0.04"},
    {"dn.tolerance", "0.3"},
    {"conservation.tolerance", "1e-6"},
};

bool known(const std::string& key) {
  for (const auto& [k, d] : schema)
    if (k == key) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  std::string text(const std::string& key) const {
    auto it = raw_.find(key);
    if (it != raw_.end()) return it->second;
    for (const auto& [k, d] : schema)
      if (k == key && !d.empty()) return d;
    throw ConfigError(key, "missing required key " + key);
  }

  double real(const std::string& key) const {
    const std::string s = text(key);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
      throw ConfigError(key, key + ": expected a finite number, got '" + s + "'");
    return v;
  }

  long long integer(const std::string& key) const {
    const std::string s = text(key);
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key, key + ": expected an integer, got '" + s + "'");
    return v;
  }

  int bounded(const std::string& key, long long lo, long long hi) const {
    const long long v = integer(key);
    if (v < lo || v > hi)
      throw ConfigError(key, key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                 std::to_string(v));
    return static_cast<int>(v);
  }

  std::uint64_t unsigned64(const std::string& key) const {
    const std::string s = text(key);
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || *end != '\0' || errno == ERANGE)
      throw ConfigError(key, key + ": expected an unsigned 64-bit integer, got '" + s + "'");
    return v;
  }

  std::vector<std::string> list(const std::string& key) const {
    std::vector<std::string> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    if (out.empty()) throw ConfigError(key, key + ": expected a comma-separated list");
    return out;
  }

 private:
  const RawConfig& raw_;
};

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, key + " " + message);
}

double positive(const Reader& r, const std::string& key) {
  const double v = r.real(key);
  require(v > 0.0, key, "must be > 0, got " + r.text(key));
  return v;
}

std::vector<double> positive_list(const Reader& r, const std::string& key, std::size_t min_size) {
  std::vector<double> out;
  for (const auto& item : r.list(key)) {
    RawConfig one{{key, item}};
    out.push_back(positive(Reader(one), key));
  }
  require(out.size() >= min_size, key, "needs at least " + std::to_string(min_size) + " entries");
  return out;
}

GridSettings read_grid(const Reader& r) {
  GridSettings g;
  g.nx = r.bounded("grid.Nx", 4, 1 << 14);
  g.ny = r.bounded("grid.Ny", 4, 1 << 14);
  require(g.nx % 2 == 0, "grid.Nx", "must be even");
  require(g.ny % 2 == 0, "grid.Ny", "must be even");
  g.lx = positive(r, "grid.Lx");
  g.ly = positive(r, "grid.Ly");
  return g;
}

RunConfig read_run(const Reader& r) {
  RunConfig run;
  run.t_end = r.real("run.t_end");
  require(run.t_end >= 0.0, "run.t_end", "must be >= 0");
  if (r.has("run.dt")) {
    const std::string s = r.text("run.dt");
    if (s != "auto") run.dt = positive(r, "run.dt");
  }
  try {
    run.scheme = parse_scheme(r.text("run.scheme"));
  } catch (const std::invalid_argument&) {
    throw ConfigError("run.scheme", "run.scheme must be one of diagonal-ifrk4, physical-rk4, linear-exact, got '" +
                                        r.text("run.scheme") + "'");
  }
  run.snapshot_stride = r.bounded("run.snapshot_stride", 1, std::numeric_limits<int>::max());
  run.diagnostics_stride = r.bounded("run.diagnostics_stride", 1, std::numeric_limits<int>::max());
  return run;
}

InitialSettings read_initial(const Reader& r, const std::optional<GridSettings>& grid, bool used) {
  InitialSettings in;
  const std::string kind = r.text("initial.kind");
  if (kind == "random")
    in.kind = InitialKind::Random;
  else if (kind == "plane-wave")
    in.kind = InitialKind::PlaneWave;
  else if (kind == "mass-profile")
    in.kind = InitialKind::MassProfile;
  else
    throw ConfigError("initial.kind", "initial.kind must be one of random, plane-wave, mass-profile, got '" + kind + "'");
  in.amplitude = r.real("initial.amplitude");
  require(in.amplitude >= 0.0, "initial.amplitude", "must be >= 0");
  in.seed = r.unsigned64("initial.seed");
  in.j = static_cast<int>(r.integer("initial.j"));
  in.k = static_cast<int>(r.integer("initial.k"));
  in.max_mode = r.bounded("initial.max_mode", 1, 1 << 13);
  if (grid && used) {
    const int half = std::min(grid->nx, grid->ny) / 2;
    if (in.kind == InitialKind::Random)
      require(in.max_mode < half, "initial.max_mode", "must be < min(Nx, Ny)/2 = " + std::to_string(half));
    if (in.kind == InitialKind::PlaneWave) {
      require(std::abs(in.j) < grid->nx / 2, "initial.j", "must satisfy |j| < Nx/2");
      require(std::abs(in.k) < grid->ny / 2, "initial.k", "must satisfy |k| < Ny/2");
    }
  }
  return in;
}

BourgainSettings read_bourgain(const Reader& r) {
  BourgainSettings s;
  const std::string kind = r.text("bourgain.kind");
  if (kind == "psi")
    s.kind = BourgainKind::Psi;
  else if (kind == "duhamel")
    s.kind = BourgainKind::Duhamel;
  else
    throw ConfigError("bourgain.kind", "bourgain.kind must be psi or duhamel, got '" + kind + "'");
  s.b = r.real("bourgain.b");
  s.eps = r.real("bourgain.eps");
  require(s.eps > 0.0 && s.eps < 0.25, "bourgain.eps", "must lie in (0, 0.25)");
  s.s = r.real("bourgain.s");
  s.t_min = positive(r, "bourgain.T_min");
  s.t_max = positive(r, "bourgain.T_max");
  require(s.t_max > s.t_min, "bourgain.T_max", "must exceed bourgain.T_min");
  s.points = r.bounded("bourgain.points", 2, 1000);
  s.nt = r.bounded("bourgain.nt", 64, 1 << 22);
  require((s.nt & (s.nt - 1)) == 0, "bourgain.nt", "must be a power of two");
  s.tolerance = positive(r, "bourgain.tolerance");
  try {
    s.branch = branch_from_int(static_cast<int>(r.integer("bourgain.branch")));
  } catch (const std::invalid_argument&) {
    throw ConfigError("bourgain.branch", "bourgain.branch must be 1 or 2");
  }
  s.j = static_cast<int>(r.integer("bourgain.j"));
  s.k = static_cast<int>(r.integer("bourgain.k"));
  s.width = positive(r, "bourgain.width");
  s.center = r.real("bourgain.center");
  s.detuning = r.real("bourgain.detuning");
  return s;
}

DnSettings read_dn(const Reader& r) {
  DnSettings d;
  d.h0 = positive(r, "dn.h0");
  d.n = r.bounded("dn.N", 8, 1 << 16);
  require(d.n % 2 == 0, "dn.N", "must be even");
  d.length = positive(r, "dn.L");
  d.k = r.bounded("dn.k", 1, d.n / 4);
  d.orders.clear();
  for (const auto& item : r.list("dn.orders")) {
    RawConfig one{{"dn.orders", item}};
    d.orders.push_back(Reader(one).bounded("dn.orders", 1, 12));
  }
  d.amplitudes = positive_list(r, "dn.amplitudes", 2);
  for (double a : d.amplitudes) require(a < 0.5, "dn.amplitudes", "entries must be < 0.5 (relative to h0)");
  d.tolerance = positive(r, "dn.tolerance");
  return d;
}

bool needs_grid(ScenarioKind kind, const Reader& r) {
  switch (kind) {
    case ScenarioKind::DnVerify:
      return false;
    case ScenarioKind::BourgainScaling:
      return r.text("bourgain.kind") == "duhamel";
    default:
      return true;
  }
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(message), key_(std::move(key)) {}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Simulate:
      return "simulate";
    case ScenarioKind::DispersionTable:
      return "dispersion-table";
    case ScenarioKind::MassWave:
      return "mass-wave";
    case ScenarioKind::BourgainScaling:
      return "bourgain-scaling";
    case ScenarioKind::DnVerify:
      return "dn-verify";
    case ScenarioKind::Conservation:
      return "conservation";
  }
  return "unknown";
}

ScenarioKind parse_scenario(const std::string& name) {
  for (auto k : {ScenarioKind::Simulate, ScenarioKind::DispersionTable, ScenarioKind::MassWave,
                 ScenarioKind::BourgainScaling, ScenarioKind::DnVerify, ScenarioKind::Conservation}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("", "unknown scenario '" + name +
                            "' (expected simulate, dispersion-table, mass-wave, bourgain-scaling, dn-verify, conservation)");
}

RawConfig read_config_text(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", "config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }
  RawConfig raw;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(section, "key '" + section + "' must appear inside a [section]");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!known(full)) throw ConfigError(full, "unknown key '" + key + "' in section [" + section + "]");
      raw[full] = trim(value.data());
    }
  }
  return raw;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_config_text(ss.str());
}

void apply_override(RawConfig& raw, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ConfigError("", "override must look like section.key=value, got '" + assignment + "'");
  const RawConfig one = read_config_text("[" + assignment.substr(0, dot) + "]\n" + assignment.substr(dot + 1) + "\n");
  for (const auto& [k, v] : one) raw[k] = v;
}

Scenario build_scenario(ScenarioKind kind, const RawConfig& raw) {
  for (const auto& [key, value] : raw) {
    if (!known(key)) throw ConfigError(key, "unknown key '" + key + "'");
  }
  const Reader r(raw);
  Scenario s;
  s.kind = kind;
  const bool any_grid = r.has("grid.Nx") || r.has("grid.Ny") || r.has("grid.Lx") || r.has("grid.Ly");
  if (needs_grid(kind, r) || any_grid) s.grid = read_grid(r);
  s.run = read_run(r);
  s.threads = r.bounded("run.threads", 1, 1024);
  const bool uses_initial = kind == ScenarioKind::Simulate || kind == ScenarioKind::DispersionTable ||
                            kind == ScenarioKind::Conservation;
  s.initial = read_initial(r, s.grid, uses_initial);
  s.dispersion.max_index = r.bounded("dispersion.max_index", 0, 1 << 13);
  if (s.grid && kind == ScenarioKind::DispersionTable) {
    const int half = std::min(s.grid->nx, s.grid->ny) / 2;
    require(s.dispersion.max_index < half, "dispersion.max_index", "must be < min(Nx, Ny)/2");
  }
  s.dispersion.tolerance = positive(r, "dispersion.tolerance");
  s.mass.epsilons = positive_list(r, "mass.epsilons", 2);
  s.mass.tolerance = positive(r, "mass.tolerance");
  s.mass.slope_tolerance = positive(r, "mass.slope_tolerance");
  s.bourgain = read_bourgain(r);
  if (s.grid && kind == ScenarioKind::BourgainScaling) {
    require(std::abs(s.bourgain.j) < s.grid->nx / 2, "bourgain.j", "must satisfy |j| < Nx/2");
    require(std::abs(s.bourgain.k) < s.grid->ny / 2, "bourgain.k", "must satisfy |k| < Ny/2");
    if (s.bourgain.kind == BourgainKind::Duhamel) {
      const long long workers = std::min(s.threads, s.bourgain.points);
      const long long entries = 1LL * s.grid->nx * s.grid->ny * s.bourgain.nt * workers;
      require(entries <= (1LL << 24), "bourgain.nt",
              "too large: Nx*Ny*nt*workers = " + std::to_string(entries) +
                  " space-time samples exceeds 16777216; use a smaller grid, nt or thread count");
    }
  }
  s.dn = read_dn(r);
  s.conservation.tolerance = positive(r, "conservation.tolerance");
  return s;
}

std::vector<std::pair<std::string, std::string>> documented_keys() { return schema; }

}  // namespace nonkp::cli
