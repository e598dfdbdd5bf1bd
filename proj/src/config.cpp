#include "bergman/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace bergman {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + s + "' for key '" + key + "'");
  }
}

int parse_int(const std::string& s, const std::string& key) {
  double v = parse_real(s, key);
  if (v != std::floor(v))
    throw ConfigError("key '" + key + "' expects an integer, got '" + s + "'");
  return static_cast<int>(v);
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  auto real_list = [](std::vector<double> ExperimentConfig::* field) {
    return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
      std::vector<double> vals;
      for (const std::string& item : split_list(v)) vals.push_back(parse_real(item, k));
      if (vals.empty()) throw ConfigError("key '" + k + "' requires at least one value");
      c.*field = std::move(vals);
    };
  };
  auto int_list = [](std::vector<int> ExperimentConfig::* field) {
    return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
      std::vector<int> vals;
      for (const std::string& item : split_list(v)) vals.push_back(parse_int(item, k));
      if (vals.empty()) throw ConfigError("key '" + k + "' requires at least one value");
      c.*field = std::move(vals);
    };
  };
  auto scalar_int = [](int ExperimentConfig::* field) {
    return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.*field = parse_int(v, k);
    };
  };
  auto scalar_real = [](double ExperimentConfig::* field) {
    return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.*field = parse_real(v, k);
    };
  };
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"n", int_list(&ExperimentConfig::n)},
      {"p", real_list(&ExperimentConfig::p)},
      {"q", real_list(&ExperimentConfig::q)},
      {"alpha", real_list(&ExperimentConfig::alpha)},
      {"gamma", real_list(&ExperimentConfig::gamma)},
      {"k", int_list(&ExperimentConfig::k)},
      {"atom_radii", real_list(&ExperimentConfig::atom_radii)},
      {"monomial_degrees", int_list(&ExperimentConfig::monomial_degrees)},
      {"lattice_sizes", int_list(&ExperimentConfig::lattice_sizes)},
      {"lattice_deltas", real_list(&ExperimentConfig::lattice_deltas)},
      {"ball_radial", scalar_int(&ExperimentConfig::ball_radial)},
      {"ball_sphere", scalar_int(&ExperimentConfig::ball_sphere)},
      {"tent_radial", scalar_int(&ExperimentConfig::tent_radial)},
      {"tent_sphere", scalar_int(&ExperimentConfig::tent_sphere)},
      {"centers_radial", scalar_int(&ExperimentConfig::centers_radial)},
      {"centers_angular", scalar_int(&ExperimentConfig::centers_angular)},
      {"maximal_radial", scalar_int(&ExperimentConfig::maximal_radial)},
      {"maximal_sphere", scalar_int(&ExperimentConfig::maximal_sphere)},
      {"segments", scalar_int(&ExperimentConfig::segments)},
      {"depth", scalar_int(&ExperimentConfig::depth)},
      {"sandwich_stride", scalar_int(&ExperimentConfig::sandwich_stride)},
      {"seed",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         try {
           c.seed = std::stoull(v);
         } catch (const std::exception&) {
           throw ConfigError("invalid seed '" + v + "' for key '" + k + "'");
         }
       }},
      {"band_spread_max", scalar_real(&ExperimentConfig::band_spread_max)},
      {"trend_slope_max", scalar_real(&ExperimentConfig::trend_slope_max)},
      {"convergence_rel", scalar_real(&ExperimentConfig::convergence_rel)},
      {"boundary_cap", scalar_real(&ExperimentConfig::boundary_cap)},
      {"out_dir",
       [](ExperimentConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
  };
  return table;
}

void set_key(ExperimentConfig& config, const std::string& key, const std::string& value) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(config, key, value);
      return;
    }
  }
  std::string valid;
  for (const std::string& k : valid_config_keys()) {
    if (!valid.empty()) valid += ", ";
    valid += k;
  }
  throw ConfigError("unknown key '" + key + "'; valid keys: " + valid);
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "tent_equivalence",    "gfunction_equivalence", "besov_equivalence",
      "weak_type_check",     "estimate_suite",        "counterexample_check",
      "atomic_bound_check"};
  return names;
}

const std::vector<std::string>& valid_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [name, setter] : setters()) out.push_back(name);
    return out;
  }();
  return keys;
}

std::map<std::string, ExperimentConfig> parse_config_text(const std::string& text) {
  const auto& names = experiment_names();
  ExperimentConfig global;
  // section name -> raw key/value pairs, applied on top of [global]
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections;
  std::string current = "global";
  sections.push_back({current, {}});

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (current != "global" &&
          std::find(names.begin(), names.end(), current) == names.end()) {
        std::string valid = "global";
        for (const std::string& n : names) valid += ", " + n;
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section '" + current +
                          "'; valid sections: " + valid);
      }
      sections.push_back({current, {}});
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" +
                        line + "'");
    sections.back().second.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }

  for (const auto& [section, pairs] : sections)
    if (section == "global")
      for (const auto& [key, value] : pairs) set_key(global, key, value);

  std::map<std::string, ExperimentConfig> out;
  for (const auto& [section, pairs] : sections) {
    if (section == "global") continue;
    auto [it, inserted] = out.emplace(section, global);
    it->second.name = section;
    for (const auto& [key, value] : pairs) set_key(it->second, key, value);
  }
  if (out.empty())
    for (const std::string& name : names) {
      ExperimentConfig c = global;
      c.name = name;
      out.emplace(name, std::move(c));
    }
  return out;
}

std::map<std::string, ExperimentConfig> parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(ExperimentConfig& config, const std::string& key_value) {
  std::size_t eq = key_value.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must be key=value, got '" + key_value + "'");
  set_key(config, trim(key_value.substr(0, eq)), trim(key_value.substr(eq + 1)));
}

ExperimentConfig default_config(const std::string& experiment) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end()) {
    std::string valid;
    for (const std::string& n : names) {
      if (!valid.empty()) valid += ", ";
      valid += n;
    }
    throw ConfigError("unknown experiment '" + experiment + "'; valid: " + valid);
  }
  ExperimentConfig c;
  c.name = experiment;
  if (experiment == "tent_equivalence") {
    c.p = {0.5, 1.0, 2.0, 4.0};
    c.q = {1.0, 2.0};
    c.n = {1, 2};
    c.alpha = {0.0, 1.0};
    c.gamma = {0.5, 1.0};
  } else if (experiment == "gfunction_equivalence") {
    c.p = {0.5, 1.0, 2.0, 4.0};
    c.q = {2.0};
    c.n = {1, 2};
    c.alpha = {0.0, 1.0};
    c.gamma = {1.0};
  } else if (experiment == "besov_equivalence") {
    c.p = {0.5, 1.0, 2.0, 4.0};
    c.q = {1.0, 2.0};
    c.n = {1, 2};
    c.alpha = {0.0, 1.0};
    c.gamma = {1.0};
    c.k = {0, 1};
  } else if (experiment == "weak_type_check") {
    c.p = {1.0};
    c.q = {1.0};
    c.n = {1, 2};
    c.alpha = {0.0};
    c.gamma = {1.0};
    c.atom_radii = {0.0, 0.75, 0.9, 0.96};
    // the level-set patch needs a fine sampling grid; the mollified averages
    // of the maximal field are smooth and get by with a light support rule
    c.ball_radial = 48;
    c.ball_sphere = 192;
    c.maximal_radial = 3;
    c.maximal_sphere = 24;
  } else if (experiment == "estimate_suite") {
    c.n = {1, 2, 3};
    c.alpha = {-0.5, 0.0, 1.0};
    c.gamma = {0.5, 1.0, 2.0};
  } else if (experiment == "counterexample_check") {
    c.n = {2};
    c.q = {2.0};
  } else if (experiment == "atomic_bound_check") {
    c.p = {0.5, 1.0, 2.0};
    c.n = {1, 2};
    c.alpha = {0.0};
  }
  return c;
}

std::vector<std::string> validate_config(const ExperimentConfig& config) {
  std::vector<std::string> errors;
  auto bad = [&errors](const std::string& msg) { errors.push_back(msg); };
  const auto& names = experiment_names();
  if (!config.name.empty() &&
      std::find(names.begin(), names.end(), config.name) == names.end())
    bad("unknown experiment name '" + config.name + "'");
  for (int n : config.n)
    if (n < 1 || n > 8) bad("n must be in [1,8], got " + std::to_string(n));
  for (double p : config.p)
    if (!(p > 0)) bad("p must be positive");
  for (double q : config.q)
    if (!(q >= 1.0) && !std::isinf(q)) bad("q must satisfy q >= 1 (or be inf)");
  for (double g : config.gamma)
    if (!(g > 0)) bad("gamma must be positive");
  for (int k : config.k)
    if (k < 0 || k > 6) bad("k must be in [0,6], got " + std::to_string(k));
  for (double r : config.atom_radii)
    if (!(r >= 0) || !(r < 1)) bad("atom radii must lie in [0,1)");
  for (double d : config.lattice_deltas)
    if (!(d > 0)) bad("lattice deltas must be positive");
  for (int m : config.lattice_sizes)
    if (m < 1) bad("lattice sizes must be >= 1");
  auto positive = [&bad](int v, const char* key) {
    if (v < 1) bad(std::string(key) + " must be >= 1");
  };
  positive(config.ball_radial, "ball_radial");
  positive(config.ball_sphere, "ball_sphere");
  positive(config.tent_radial, "tent_radial");
  positive(config.tent_sphere, "tent_sphere");
  positive(config.centers_radial, "centers_radial");
  positive(config.centers_angular, "centers_angular");
  positive(config.maximal_radial, "maximal_radial");
  positive(config.maximal_sphere, "maximal_sphere");
  positive(config.segments, "segments");
  positive(config.depth, "depth");
  positive(config.sandwich_stride, "sandwich_stride");
  if (!(config.band_spread_max > 1)) bad("band_spread_max must exceed 1");
  if (!(config.trend_slope_max > 0)) bad("trend_slope_max must be positive");
  if (!(config.convergence_rel > 0)) bad("convergence_rel must be positive");
  if (!(config.boundary_cap > 0) || !(config.boundary_cap < 1))
    bad("boundary_cap must lie in (0,1)");
  return errors;
}

}  // namespace bergman
