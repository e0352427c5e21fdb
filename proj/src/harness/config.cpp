#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hvi/harness.hpp"

namespace hvi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const Config& cfg, const std::string& key) {
  const auto it = cfg.lines.find(key);
  return cfg.source + ":" + (it == cfg.lines.end() ? std::string("?") : std::to_string(it->second)) + ": ";
}

double to_double(const Config& cfg, const std::string& key, const std::string& text) {
  double x = 0.0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(where(cfg, key) + key + ": expected a number, got '" + t + "'");
  return x;
}

int to_int(const Config& cfg, const std::string& key, const std::string& text) {
  int x = 0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(where(cfg, key) + key + ": expected an integer, got '" + t + "'");
  return x;
}

bool to_bool(const Config& cfg, const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(where(cfg, key) + key + ": expected true or false, got '" + text + "'");
}

std::vector<double> to_list(const Config& cfg, const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(cfg, key, item));
  return out;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "case.name",       "mesh.h0",         "mesh.levels",    "mesh.scale",          "solver.tol",
      "solver.max_iter", "solver.damping.enabled",            "solver.warm_start",   "smoothing.eps",
      "smoothing.eps_schedule",             "friction.name",  "friction.params",     "material.name",
      "output.dir",      "output.format"};
  return keys;
}

Config parse_config(std::istream& in, const std::string& source) {
  Config cfg;
  cfg.source = source;
  const auto& keys = known_config_keys();
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const std::string loc = source + ":" + std::to_string(line) + ": ";
    if (eq == std::string::npos) throw ConfigError(loc + "expected 'key = value', got '" + text + "'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(loc + "missing key before '='");
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(loc + "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(loc + "empty value for '" + key + "'");
    if (cfg.values.count(key))
      throw ConfigError(loc + "duplicate key '" + key + "' (first set on line " + std::to_string(cfg.lines[key]) +
                        ")");
    cfg.values[key] = value;
    cfg.lines[key] = line;
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse_config(in, path);
}

RunSettings settings_from_config(const Config& cfg) {
  RunSettings s;
  s.echo = cfg;
  const auto get = [&](const std::string& k) -> const std::string* {
    const auto it = cfg.values.find(k);
    return it == cfg.values.end() ? nullptr : &it->second;
  };
  const auto fail = [&](const std::string& k, const std::string& msg) { throw ConfigError(where(cfg, k) + k + ": " + msg); };

  if (auto v = get("case.name")) s.case_name = *v;
  else throw ConfigError(cfg.source + ": missing required key 'case.name'");
  if (auto v = get("mesh.h0")) s.h0 = to_double(cfg, "mesh.h0", *v);
  if (!(s.h0 > 0.0)) fail("mesh.h0", "must be positive");
  if (auto v = get("mesh.levels")) s.levels = to_int(cfg, "mesh.levels", *v);
  if (s.levels < 1) fail("mesh.levels", "must be at least 1");
  if (auto v = get("mesh.scale")) s.scale = to_double(cfg, "mesh.scale", *v);
  if (!(s.scale > 0.0)) fail("mesh.scale", "must be positive");
  if (auto v = get("solver.tol")) s.solver.tol = to_double(cfg, "solver.tol", *v);
  if (!(s.solver.tol > 0.0)) fail("solver.tol", "must be positive");
  if (auto v = get("solver.max_iter")) s.solver.max_iter = to_int(cfg, "solver.max_iter", *v);
  if (s.solver.max_iter < 1) fail("solver.max_iter", "must be at least 1");
  if (auto v = get("solver.damping.enabled")) s.solver.damping = to_bool(cfg, "solver.damping.enabled", *v);
  if (auto v = get("solver.warm_start")) s.warm_start = to_bool(cfg, "solver.warm_start", *v);
  if (auto v = get("smoothing.eps")) s.eps = to_double(cfg, "smoothing.eps", *v);
  if (!(s.eps > 0.0)) fail("smoothing.eps", "must be positive");
  if (auto v = get("smoothing.eps_schedule")) {
    s.eps_schedule = to_list(cfg, "smoothing.eps_schedule", *v);
    if (s.eps_schedule.size() < 3) fail("smoothing.eps_schedule", "needs at least 3 values");
    for (std::size_t i = 0; i < s.eps_schedule.size(); ++i) {
      if (!(s.eps_schedule[i] > 0.0)) fail("smoothing.eps_schedule", "values must be positive");
      if (i > 0 && !(s.eps_schedule[i] < s.eps_schedule[i - 1])) fail("smoothing.eps_schedule", "must be strictly decreasing");
    }
  }
  if (auto v = get("friction.name")) s.friction_name = *v;
  if (auto v = get("friction.params")) {
    if (!s.friction_name) fail("friction.params", "requires friction.name");
    s.friction_params = to_list(cfg, "friction.params", *v);
  }
  if (auto v = get("material.name")) s.material_name = *v;
  if (auto v = get("output.dir")) s.output_dir = *v;
  if (auto v = get("output.format")) {
    if (*v != "csv" && *v != "json") fail("output.format", "must be csv or json");
    s.output_format = *v;
  }
  return s;
}

}  // namespace hvi
