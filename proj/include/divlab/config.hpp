#ifndef DIVLAB_CONFIG_HPP
#define DIVLAB_CONFIG_HPP

#include <istream>
#include <map>
#include <string>

#include "divlab/inequalities.hpp"

namespace divlab::cli {

inline constexpr const char* kVersion = "0.1.0";

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` text. Blank lines and lines starting with '#' are
/// skipped. Unknown or repeated keys raise ConfigError naming the source
/// and line.
KeyValues read_key_values(std::istream& in, const std::string& source);
KeyValues read_key_values_file(const std::string& path);

/// Overwrites the fields named in `kv`. Keys: gamma0, lambda, tau, t_min,
/// t_max, dt, family_min, family_max, family_n, grid_theta, grid_phi,
/// grid_r, tol, out_dir, seed.
void apply(const KeyValues& kv, inequalities::SweepConfig& cfg);

/// Echo of the configuration with the same keys.
KeyValues to_key_values(const inequalities::SweepConfig& cfg);

/// "min:max:n", e.g. "0.01:0.99:99".
inequalities::FamilySpec parse_family(const std::string& text);

/// Strict numeric parsing; the whole string must be consumed.
double parse_double(const std::string& key, const std::string& text);
long long parse_integer(const std::string& key, const std::string& text);

}  // namespace divlab::cli

#endif  // DIVLAB_CONFIG_HPP
