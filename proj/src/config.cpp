#include "divlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "divlab/report.hpp"

namespace divlab::cli {

using inequalities::ConfigError;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"gamma0",     "lambda",     "tau",        "t_min",
                                          "t_max",      "dt",         "family_min", "family_max",
                                          "family_n",   "grid_theta", "grid_phi",   "grid_r",
                                          "tol",        "out_dir",    "seed"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_count(const std::string& key, const std::string& text) {
  const long long v = parse_integer(key, text);
  if (v < 0 || v > 1'000'000) throw ConfigError(key + " out of range: " + text);
  return static_cast<int>(v);
}

}  // namespace

double parse_double(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("invalid number for " + key + ": '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("invalid integer for " + key + ": '" + text + "'");
  }
  return v;
}

KeyValues read_key_values(std::istream& in, const std::string& source) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!known_keys().contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (kv.contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  return read_key_values(in, path);
}

void apply(const KeyValues& kv, inequalities::SweepConfig& cfg) {
  for (const auto& [key, value] : kv) {
    if (key == "gamma0") cfg.gamma0 = parse_double(key, value);
    else if (key == "lambda") cfg.lambda = parse_double(key, value);
    else if (key == "tau") cfg.tau = parse_double(key, value);
    else if (key == "t_min") cfg.t_min = parse_double(key, value);
    else if (key == "t_max") cfg.t_max = parse_double(key, value);
    else if (key == "dt") cfg.dt = parse_double(key, value);
    else if (key == "family_min") cfg.family.gamma0_min = parse_double(key, value);
    else if (key == "family_max") cfg.family.gamma0_max = parse_double(key, value);
    else if (key == "family_n") cfg.family.n = parse_count(key, value);
    else if (key == "grid_theta") cfg.opt.grid_theta = parse_count(key, value);
    else if (key == "grid_phi") cfg.opt.grid_phi = parse_count(key, value);
    else if (key == "grid_r") cfg.opt.grid_r = parse_count(key, value);
    else if (key == "tol") cfg.opt.tol = parse_double(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "seed") cfg.opt.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    else throw ConfigError("unknown key '" + key + "'");
  }
}

KeyValues to_key_values(const inequalities::SweepConfig& cfg) {
  return {{"gamma0", format_number(cfg.gamma0)},
          {"lambda", format_number(cfg.lambda)},
          {"tau", format_number(cfg.tau)},
          {"t_min", format_number(cfg.t_min)},
          {"t_max", format_number(cfg.t_max)},
          {"dt", format_number(cfg.dt)},
          {"family_min", format_number(cfg.family.gamma0_min)},
          {"family_max", format_number(cfg.family.gamma0_max)},
          {"family_n", std::to_string(cfg.family.n)},
          {"grid_theta", std::to_string(cfg.opt.grid_theta)},
          {"grid_phi", std::to_string(cfg.opt.grid_phi)},
          {"grid_r", std::to_string(cfg.opt.grid_r)},
          {"tol", format_number(cfg.opt.tol)},
          {"out_dir", cfg.out_dir},
          {"seed", std::to_string(cfg.opt.seed)}};
}

inequalities::FamilySpec parse_family(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw ConfigError("family must be min:max:n, got '" + text + "'");
  inequalities::FamilySpec spec;
  spec.gamma0_min = parse_double("family min", parts[0]);
  spec.gamma0_max = parse_double("family max", parts[1]);
  spec.n = parse_count("family n", parts[2]);
  return spec;
}

}  // namespace divlab::cli
