#include "condense/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "condense/dirichlet.hpp"
#include "condense/serialize.hpp"

namespace condense {

ConfigError::ConfigError(std::string key, const std::string& what)
    : std::invalid_argument("config key '" + key + "': " + what), key_(std::move(key)) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) throw ConfigError(key, "not a finite number: '" + v + "'");
  return x;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::int64_t x = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "not an integer: '" + v + "'");
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "not a nonnegative integer: '" + v + "'");
  return x;
}

Index to_index(const std::string& key, const std::string& v) {
  try {
    return parse_index(v);
  } catch (const std::exception&) {
    throw ConfigError(key, "not an index: '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key, "expected true or false: '" + v + "'");
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

const std::vector<std::string> kFamilies = {"coordinate", "fourier", "nonlinear-gal", "bounded-fake"};

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "family") {
    require(std::find(kFamilies.begin(), kFamilies.end(), v) != kFamilies.end(), key,
            "unknown family '" + v + "'");
    c.family = v;
  } else if (key == "p") {
    c.p = to_real(key, v);
    require(c.p > 0.0 && c.p <= 1.0, key, "must lie in (0, 1]");
  } else if (key == "K") {
    const auto k = to_int(key, v);
    require(k >= 0 && k <= 100000, key, "must lie in [0, 100000]");
    c.K = static_cast<int>(k);
  } else if (key == "cap") {
    c.cap = to_real(key, v);
    require(c.cap > 0.0 && c.cap <= 1.0, key, "must lie in (0, 1]");
  } else if (key == "n_max") {
    c.n_max = to_index(key, v);
    require(c.n_max >= 1, key, "must be at least 1");
  } else if (key == "quadrature_order") {
    c.quadrature_order = to_int(key, v);
    require(c.quadrature_order >= 2, key, "must be at least 2");
  } else if (key == "grid_resolution") {
    const auto g = to_int(key, v);
    require(g >= 16 && g <= (1 << 24), key, "must lie in [16, 2^24]");
    c.grid_resolution = static_cast<int>(g);
  } else if (key == "seed") {
    c.seed = to_unsigned(key, v);
  } else if (key == "out") {
    require(!v.empty(), key, "empty path");
    c.out = v;
  } else if (key == "points") {
    std::vector<double> pts;
    std::istringstream in(v);
    std::string cell;
    while (std::getline(in, cell, ',')) pts.push_back(to_real(key, trim(cell)));
    require(!pts.empty(), key, "no points");
    c.points = std::move(pts);
  } else if (key == "smoothing_width") {
    c.smoothing_width = to_real(key, v);
    require(c.smoothing_width >= 0.0, key, "must be nonnegative");
  } else if (key == "samples") {
    c.samples = to_unsigned(key, v);
  } else if (key == "sample_n_max") {
    c.sample_n_max = to_index(key, v);
    require(c.sample_n_max >= 1, key, "must be at least 1");
  } else if (key == "m_max") {
    const auto m = to_int(key, v);
    require(m >= 1 && m <= 1000, key, "must lie in [1, 1000]");
    c.m_max = static_cast<int>(m);
  } else if (key == "x_samples") {
    c.x_samples = to_unsigned(key, v);
  } else if (key == "trend_n_max") {
    c.trend_n_max = to_index(key, v);
    require(c.trend_n_max >= 16, key, "must be at least 16");
  } else if (key == "blowup_floor") {
    c.blowup_floor = to_real(key, v);
  } else if (key == "override_C") {
    if (v.empty() || v == "none") {
      c.override_C.reset();
    } else {
      c.override_C = to_real(key, v);
      require(*c.override_C > 0.0, key, "must be positive");
    }
  } else if (key == "zero_c") {
    c.zero_c = to_bool(key, v);
  } else if (key == "L") {
    c.L = to_real(key, v);
    require(c.L >= 1.0, key, "must be at least 1");
  } else if (key == "C") {
    c.C = to_real(key, v);
    require(c.C >= 1.0, key, "must be at least 1");
  } else {
    throw ConfigError(key, "unknown key");
  }
}

std::vector<Setting> parse_config_text(const std::string& text) {
  std::vector<Setting> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "line " + std::to_string(lineno) + " is not 'key = value'");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

RunConfig load_config(const std::optional<std::string>& path, const std::vector<Setting>& overrides) {
  RunConfig c;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("config", "cannot read '" + *path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    for (const auto& [k, v] : parse_config_text(buf.str())) apply_setting(c, k, v);
  }
  for (const auto& [k, v] : overrides) apply_setting(c, k, v);
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  if (c.family == "nonlinear-gal") require(c.p < 1.0, "p", "nonlinear-gal needs p < 1");
  if (c.family == "fourier") {
    for (double t : c.points) require(t >= -kPi && t < kPi, "points", "must lie in [-pi, pi)");
    for (std::size_t i = 0; i < c.points.size(); ++i)
      for (std::size_t j = i + 1; j < c.points.size(); ++j)
        require(c.points[i] != c.points[j], "points", "must be distinct");
  }
}

std::map<std::string, std::string> snapshot(const RunConfig& c) {
  std::string pts;
  for (std::size_t i = 0; i < c.points.size(); ++i) pts += (i ? "," : "") + format_double(c.points[i]);
  return {{"family", c.family},
          {"p", format_double(c.p)},
          {"K", std::to_string(c.K)},
          {"cap", format_double(c.cap)},
          {"n_max", to_string(c.n_max)},
          {"quadrature_order", std::to_string(c.quadrature_order)},
          {"grid_resolution", std::to_string(c.grid_resolution)},
          {"seed", std::to_string(c.seed)},
          {"points", pts},
          {"smoothing_width", format_double(c.smoothing_width)},
          {"override_C", c.override_C ? format_double(*c.override_C) : "none"},
          {"zero_c", c.zero_c ? "true" : "false"}};
}

FamilyPtr make_family(const RunConfig& c, const Index& n_max, int m_max) {
  FamilyPtr base;
  if (c.family == "coordinate") {
    base = coordinate_family(c.p, plan_dimension(n_max, m_max));
  } else if (c.family == "nonlinear-gal") {
    base = nonlinear_gal_family(c.p, plan_dimension(n_max, m_max));
  } else if (c.family == "bounded-fake") {
    base = bounded_fake_family(c.p, plan_dimension(n_max, m_max));
  } else if (c.family == "fourier") {
    FourierOptions o;
    o.points = c.points;
    o.quadrature_order = c.quadrature_order;
    o.smoothing_width = c.smoothing_width;
    o.grid_resolution = c.grid_resolution;
    base = fourier_family(std::move(o));
  } else {
    throw ConfigError("family", "unknown family '" + c.family + "'");
  }
  if (!c.override_C && !c.zero_c) return base;
  FamilyConstants k = base->constants();
  std::string id = base->id();
  if (c.override_C) {
    const double C = *c.override_C;
    k.C = [C](int) { return C; };
    id += "+C=" + format_double(C);
  }
  if (c.zero_c) {
    k.c = [](const Index&, int, const Point&) { return 0.0; };
    id += "+c=0";
  }
  return with_constants(base, std::move(k), id);
}

}  // namespace condense
