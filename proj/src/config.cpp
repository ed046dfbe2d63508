#include "harmtori/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "harmtori/report.hpp"

namespace harmtori {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("config key '" + key + "': cannot parse '" + v + "'");
  return out;
}

}  // namespace

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.k_grid = k_grid;
  o.angle_grid = angle_grid;
  o.span = span;
  o.k_min = k_min;
  o.k_max = k_max;
  o.start_angle = start_angle;
  o.solve.residual = solver_tol;
  return o;
}

void validate(const RunConfig& c) {
  if (!(c.solver_tol > 0 && c.detection_tol > 0 && c.quadrature_tol > 0))
    throw std::invalid_argument("tolerances must be positive");
  if (!(0.0 < c.k_min && c.k_min < c.k_max && c.k_max < 1.0))
    throw std::invalid_argument("config needs 0 < k_min < k_max < 1");
  if (c.k_grid < 2 || c.angle_grid < 2) throw std::invalid_argument("grid sizes must be at least 2");
  if (!(c.span > 0.0)) throw std::invalid_argument("span must be positive");
  if (c.max_den < 1) throw std::invalid_argument("max_den must be at least 1");
  if (c.q_range < 0) throw std::invalid_argument("q_range must be non-negative");
}

RunConfig parse_config(const std::string& text, RunConfig c) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "solver_tol") c.solver_tol = parse_number<double>(key, val);
    else if (key == "detection_tol") c.detection_tol = parse_number<double>(key, val);
    else if (key == "quadrature_tol") c.quadrature_tol = parse_number<double>(key, val);
    else if (key == "k_grid") c.k_grid = parse_number<int>(key, val);
    else if (key == "angle_grid") c.angle_grid = parse_number<int>(key, val);
    else if (key == "k_min") c.k_min = parse_number<double>(key, val);
    else if (key == "k_max") c.k_max = parse_number<double>(key, val);
    else if (key == "span") c.span = parse_number<double>(key, val);
    else if (key == "start_angle") c.start_angle = parse_number<double>(key, val);
    else if (key == "max_den") c.max_den = parse_number<std::int64_t>(key, val);
    else if (key == "q_range") c.q_range = parse_number<std::int64_t>(key, val);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, val);
    else if (key == "out") c.out_path = val;
    else if (key == "mesh") c.mesh_path = val;
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  validate(c);
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), base);
}

RunConfig config_from_environment() {
  const char* path = std::getenv(kConfigEnv);
  if (path == nullptr || *path == '\0') return {};
  return load_config_file(path);
}

std::string to_string(const RunConfig& c) {
  std::ostringstream os;
  os << "solver_tol=" << fmt17(c.solver_tol) << " detection_tol=" << fmt17(c.detection_tol)
     << " quadrature_tol=" << fmt17(c.quadrature_tol) << " k_grid=" << c.k_grid << " angle_grid=" << c.angle_grid
     << " k_min=" << fmt17(c.k_min) << " k_max=" << fmt17(c.k_max) << " span=" << fmt17(c.span)
     << " start_angle=" << fmt17(c.start_angle) << " max_den=" << c.max_den << " q_range=" << c.q_range
     << " seed=" << c.seed;
  return os.str();
}

}  // namespace harmtori
