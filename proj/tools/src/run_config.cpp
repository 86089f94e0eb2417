#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "sympgeo/error.hpp"
#include "sympgeo/galerkin.hpp"
#include "sympgeo/random_fields.hpp"

namespace sympgeo::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double x = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw ParseError(key + ": expected a number, got '" + text + "'");
  }
  return x;
}

long long to_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  long long x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw ParseError(key + ": expected an integer, got '" + text + "'");
  }
  return x;
}

int to_int(const std::string& key, const std::string& text) {
  const long long x = to_integer(key, text);
  if (x < -1000000000LL || x > 1000000000LL) throw ParseError(key + ": value out of range");
  return static_cast<int>(x);
}

std::vector<StreamMode> parse_modes(const std::string& text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ParseError("modes: expected [(k1,k2,re,im), ...]");
  }
  s = trim(s.substr(1, s.size() - 2));
  std::vector<StreamMode> modes;
  static const std::regex tuple(R"(^\(\s*([^,()]+),\s*([^,()]+),\s*([^,()]+),\s*([^,()]+)\)\s*(,\s*)?)");
  std::smatch m;
  while (!s.empty()) {
    if (!std::regex_search(s, m, tuple)) throw ParseError("modes: cannot parse '" + s + "'");
    modes.push_back({to_int("modes", m[1]), to_int("modes", m[2]), to_double("modes", m[3]), to_double("modes", m[4])});
    const bool comma = m[5].matched;
    s = trim(m.suffix().str());
    if (!comma && !s.empty()) throw ParseError("modes: missing ',' before '" + s + "'");
  }
  return modes;
}

Vec2 parse_pair(const std::string& key, const std::string& text) {
  static const std::regex pair(R"(^\(\s*([^,()]+),\s*([^,()]+)\)$)");
  std::smatch m;
  const std::string s = trim(text);
  if (!std::regex_match(s, m, pair)) throw ParseError(key + ": expected (a, b)");
  return {to_double(key, m[1]), to_double(key, m[2])};
}

TimeGrid parse_grid(const std::string& text) {
  std::stringstream ss(text);
  std::string a;
  std::string b;
  std::string c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) || c.find(':') != std::string::npos) {
    throw ParseError("t_grid: expected start:step:stop");
  }
  return {to_double("t_grid", a), to_double("t_grid", b), to_double("t_grid", c)};
}

bool parse_form(const std::string& text, Form& form) {
  const std::string s = trim(text);
  if (s == "direct") {
    form = Form::kDirect;
  } else if (s == "vorticity") {
    form = Form::kVorticity;
  } else {
    return false;
  }
  return true;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::kGeodesic:
      return "geodesic";
    case Command::kJacobiScan:
      return "jacobi-scan";
    case Command::kOpsSelftest:
      return "ops-selftest";
    case Command::kCpnVerify:
      return "cpn-verify";
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::kGeodesic, Command::kJacobiScan, Command::kOpsSelftest, Command::kCpnVerify}) {
    if (name == command_name(c)) return c;
  }
  return std::nullopt;
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "command") {
    const auto c = parse_command(v);
    if (!c) throw ParseError("command: unknown command '" + v + "'");
    cfg.command = *c;
  } else if (key == "n") {
    cfg.n = to_int(key, v);
  } else if (key == "dt") {
    cfg.dt = to_double(key, v);
  } else if (key == "t_end") {
    cfg.t_end = to_double(key, v);
  } else if (key == "form") {
    if (!parse_form(v, cfg.form)) throw ParseError("form: expected direct or vorticity");
  } else if (key == "modes") {
    cfg.modes = parse_modes(v);
  } else if (key == "harmonic") {
    cfg.harmonic = parse_pair(key, v);
  } else if (key == "random_band") {
    cfg.random_band = to_int(key, v);
  } else if (key == "basis_dim") {
    cfg.basis_dim = to_int(key, v);
  } else if (key == "t_grid") {
    cfg.t_grid = parse_grid(v);
  } else if (key == "sample_every") {
    cfg.sample_every = to_int(key, v);
  } else if (key == "diag_every") {
    cfg.diag_every = to_int(key, v);
  } else if (key == "seed") {
    const long long s = to_integer(key, v);
    if (s < 0) throw ParseError("seed: must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "cpn_n") {
    cfg.cpn_n = to_int(key, v);
  } else if (key == "threshold") {
    cfg.threshold = to_double(key, v);
  } else if (key == "out") {
    if (v.empty()) throw ParseError("out: empty path");
    cfg.out = v;
  } else {
    throw ParseError("unknown key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text, const std::string& source, std::optional<Command> command,
                       Origins* origins) {
  std::vector<Line> global;
  std::vector<std::pair<std::string, Line>> sectioned;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  auto where = [&](int line) { return source + ":" + std::to_string(line); };
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[' && s.back() == ']' && s.find('=') == std::string::npos) {
      section = trim(s.substr(1, s.size() - 2));
      if (!parse_command(section)) throw ParseError(where(number) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(where(number) + ": expected key = value");
    Line line{number, trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
    if (line.key.empty()) throw ParseError(where(number) + ": missing key");
    if (section.empty()) {
      global.push_back(line);
    } else {
      if (line.key == "command") throw ParseError(where(number) + ": command may only be set outside sections");
      sectioned.emplace_back(section, line);
    }
  }

  RunConfig cfg;
  auto apply = [&](const Line& line) {
    try {
      assign(cfg, line.key, line.value);
    } catch (const ParseError& e) {
      throw ParseError(where(line.number) + ": " + e.what());
    }
    if (origins) (*origins)[line.key] = where(line.number);
  };
  for (const auto& line : global) apply(line);
  if (command) cfg.command = *command;
  for (const auto& [name, line] : sectioned) {
    if (name == command_name(cfg.command)) apply(line);
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& sets, Origins* origins) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("--set " + s + ": expected key=value");
    const std::string key = trim(s.substr(0, eq));
    if (key == "command") throw ParseError("--set: the command is given as the first argument");
    try {
      assign(cfg, key, s.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(std::string("--set: ") + e.what());
    }
    if (origins) (*origins)[key] = "--set";
  }
}

void finalize(RunConfig& cfg, const Origins& origins) {
  auto fail = [&](const std::string& key, const std::string& msg) {
    const auto it = origins.find(key);
    const std::string prefix = it == origins.end() ? "" : it->second + ": ";
    throw ParseError(prefix + key + ": " + msg);
  };
  if (cfg.n < 8 || cfg.n % 2 != 0) fail("n", "grid size must be even and at least 8, got " + std::to_string(cfg.n));
  if (cfg.n > 512) fail("n", "grid size above 512 is not supported");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) fail("dt", "must be positive");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) fail("t_end", "must be positive");
  if (cfg.dt > cfg.t_end) fail("dt", "exceeds t_end");
  if (cfg.sample_every < 0) fail("sample_every", "must be >= 0");
  if (cfg.diag_every < 0) fail("diag_every", "must be >= 0");
  if (cfg.random_band < 0) fail("random_band", "must be >= 0");
  if (!std::isfinite(cfg.harmonic[0]) || !std::isfinite(cfg.harmonic[1])) fail("harmonic", "must be finite");
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) fail("threshold", "must lie in (0, 1)");
  if (cfg.cpn_n < 2) fail("cpn_n", "must be >= 2");
  if (cfg.cpn_n > 64) fail("cpn_n", "must be <= 64");

  const Grid2D grid(cfg.n);
  const int cutoff = grid.dealias_cutoff();
  if (cfg.random_band > cutoff) fail("random_band", "exceeds the dealiased band n/3 = " + std::to_string(cutoff));
  const int max_m = GalerkinBasis::resolved_dimension(grid) / 4;
  if (cfg.basis_dim < 1 || cfg.basis_dim > max_m) {
    fail("basis_dim", "must lie in [1, " + std::to_string(max_m) + "] for n = " + std::to_string(cfg.n));
  }
  const TimeGrid& g = cfg.t_grid;
  if (!(g.start > 0.0) || !(g.step > 0.0) || !(g.stop >= g.start) || !std::isfinite(g.stop)) {
    fail("t_grid", "needs 0 < start <= stop and step > 0");
  }
  if ((g.stop - g.start) / g.step > 1e6) fail("t_grid", "more than 1e6 points");

  std::vector<StreamMode> completed;
  auto find = [&](int k1, int k2) {
    return std::find_if(completed.begin(), completed.end(),
                        [&](const StreamMode& m) { return m.k1 == k1 && m.k2 == k2; });
  };
  for (const auto& m : cfg.modes) {
    if (m.k1 == 0 && m.k2 == 0) fail("modes", "(0,0) is the stream mean; use harmonic for constant fields");
    if (std::max(std::abs(m.k1), std::abs(m.k2)) > cutoff) {
      fail("modes", "(" + std::to_string(m.k1) + "," + std::to_string(m.k2) + ") lies outside the dealiased band n/3 = " +
                        std::to_string(cutoff));
    }
    if (!std::isfinite(m.re) || !std::isfinite(m.im)) fail("modes", "coefficients must be finite");
    if (find(m.k1, m.k2) != completed.end()) {
      if (*find(m.k1, m.k2) == m) continue;
      fail("modes", "mode (" + std::to_string(m.k1) + "," + std::to_string(m.k2) + ") given twice");
    }
    completed.push_back(m);
  }
  const std::size_t given = completed.size();
  for (std::size_t i = 0; i < given; ++i) {
    const StreamMode m = completed[i];
    const auto partner = find(-m.k1, -m.k2);
    if (partner == completed.end()) {
      completed.push_back({-m.k1, -m.k2, m.re, -m.im});
    } else if (std::abs(partner->re - m.re) > 1e-12 || std::abs(partner->im + m.im) > 1e-12) {
      fail("modes", "(" + std::to_string(m.k1) + "," + std::to_string(m.k2) +
                        ") and its negative are not complex conjugates");
    }
  }
  cfg.modes = completed;
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream o;
  o << "command = " << command_name(cfg.command) << "\n";
  o << "n = " << cfg.n << "\n";
  o << "dt = " << fmt(cfg.dt) << "\n";
  o << "t_end = " << fmt(cfg.t_end) << "\n";
  o << "form = " << (cfg.form == Form::kDirect ? "direct" : "vorticity") << "\n";
  o << "modes = [";
  for (std::size_t i = 0; i < cfg.modes.size(); ++i) {
    const auto& m = cfg.modes[i];
    o << (i ? ", " : "") << "(" << m.k1 << "," << m.k2 << "," << fmt(m.re) << "," << fmt(m.im) << ")";
  }
  o << "]\n";
  o << "harmonic = (" << fmt(cfg.harmonic[0]) << "," << fmt(cfg.harmonic[1]) << ")\n";
  o << "random_band = " << cfg.random_band << "\n";
  o << "basis_dim = " << cfg.basis_dim << "\n";
  o << "t_grid = " << fmt(cfg.t_grid.start) << ":" << fmt(cfg.t_grid.step) << ":" << fmt(cfg.t_grid.stop) << "\n";
  o << "sample_every = " << cfg.sample_every << "\n";
  o << "diag_every = " << cfg.diag_every << "\n";
  o << "seed = " << cfg.seed << "\n";
  o << "cpn_n = " << cfg.cpn_n << "\n";
  o << "threshold = " << fmt(cfg.threshold) << "\n";
  o << "out = " << cfg.out << "\n";
  return o.str();
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig s;
  s.n = cfg.n;
  s.dt = cfg.dt;
  s.t_end = cfg.t_end;
  s.form = cfg.form;
  s.sample_every = cfg.sample_every;
  s.diag_every = cfg.diag_every;
  s.basis_dim = cfg.basis_dim;
  return s;
}

SymplecticVectorField initial_field(const RunConfig& cfg) {
  const Grid2D grid(cfg.n);
  if (cfg.random_band > 0) {
    std::mt19937_64 rng(cfg.seed);
    SymplecticVectorField v(random_band_limited(grid, cfg.random_band, rng), cfg.harmonic);
    return v;
  }
  SpectrumField f(grid);
  for (const auto& m : cfg.modes) f.set_coeff(m.k1, m.k2, {m.re, m.im});
  return SymplecticVectorField(f, cfg.harmonic);
}

}  // namespace sympgeo::cli
