#pragma once

// Flat key=value configuration with [sections]. A key inside section "run"
// is stored as "run.key". Lines starting with '#' or ';' are comments.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "sbt/segal_bargmann.hpp"
#include "sbt/spectrum.hpp"

namespace sbt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in) {
    ConfigFile c;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string s = detail::trim(line);
      if (s.empty() || s[0] == '#' || s[0] == ';') continue;
      if (s.front() == '[') {
        if (s.back() != ']' || s.size() < 3) throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
        section = detail::trim(s.substr(1, s.size() - 2));
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = detail::trim(s.substr(0, eq));
      if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      const std::string full = section.empty() ? key : section + "." + key;
      if (c.values_.count(full)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + full);
      c.values_[full] = detail::trim(s.substr(eq + 1));
    }
    return c;
  }

  static ConfigFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse(in);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(it->second, &used);
    } catch (const std::exception&) {
      throw ConfigError(key + ": not a number: " + it->second);
    }
    if (used != it->second.size()) throw ConfigError(key + ": not a number: " + it->second);
    return v;
  }

  long long get_int(const std::string& key, long long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t used = 0;
    long long v;
    try {
      v = std::stoll(it->second, &used);
    } catch (const std::exception&) {
      throw ConfigError(key + ": not an integer: " + it->second);
    }
    if (used != it->second.size()) throw ConfigError(key + ": not an integer: " + it->second);
    return v;
  }

 private:
  std::map<std::string, std::string> values_;
};

/// Run settings shared by every subcommand. NaN marks "use the suite default".
struct RunConfig {
  std::string group = "torus-1";
  int cutoff = 8;
  double t = std::numeric_limits<double>::quiet_NaN();
  double s = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double tol = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 1;
  std::string out = "out";
  GeneratorScaling scaling = GeneratorScaling::Half;
  int x_points = 0;    // 0: automatic
  double y_max = 0.0;  // 0: automatic
  int count = 20;      // random functions per family

  void validate() const {
    try {
      parse_group(group);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (cutoff < 1) throw ConfigError("cutoff must be positive");
    auto pos = [](double v, const char* name) {
      if (!std::isnan(v) && !(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
    };
    pos(t, "t");
    pos(gamma, "gamma");
    pos(tol, "tol");
    if (!std::isnan(s) && !(s > 0.0)) throw ConfigError("s must be positive");
    if (x_points < 0) throw ConfigError("x_points must be positive");
    if (y_max < 0.0) throw ConfigError("y_max must be positive");
    if (count < 1) throw ConfigError("count must be positive");
    if (out.empty()) throw ConfigError("out must be a directory name");
  }

  /// Keys: [run] group cutoff t s gamma tol seed out count; [torus] scaling x_points y_max.
  void apply(const ConfigFile& f) {
    group = f.get("run.group", group);
    cutoff = static_cast<int>(f.get_int("run.cutoff", cutoff));
    t = f.get_double("run.t", t);
    s = f.get_double("run.s", s);
    gamma = f.get_double("run.gamma", gamma);
    tol = f.get_double("run.tol", tol);
    const long long sd = f.get_int("run.seed", static_cast<long long>(seed));
    if (sd < 0) throw ConfigError("seed must be nonnegative");
    seed = static_cast<std::uint64_t>(sd);
    out = f.get("run.out", out);
    count = static_cast<int>(f.get_int("run.count", count));
    try {
      scaling = parse_scaling(f.get("torus.scaling", to_string(scaling)));
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    x_points = static_cast<int>(f.get_int("torus.x_points", x_points));
    y_max = f.get_double("torus.y_max", y_max);
    static const char* known[] = {"run.group", "run.cutoff", "run.t",   "run.s",          "run.gamma",       "run.tol",
                                  "run.seed",  "run.out",    "run.count", "torus.scaling", "torus.x_points", "torus.y_max"};
    for (const auto& [k, v] : f.values()) {
      bool ok = false;
      for (const char* n : known) ok = ok || k == n;
      if (!ok) throw ConfigError("unknown config key " + k);
    }
  }

  BergmanOptions bergman() const {
    BergmanOptions o;
    o.x_points = x_points;
    o.y_max = y_max;
    return o;
  }
};

}  // namespace sbt
