#ifndef BERGMAN_CONFIG_HPP
#define BERGMAN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergman {

/// Parameter grid and resolutions driving one experiment.
struct ExperimentConfig {
  std::string name;

  // SpaceParams grid
  std::vector<int> n{1};
  std::vector<double> p{2.0};
  std::vector<double> q{2.0};
  std::vector<double> alpha{0.0};
  std::vector<double> gamma{1.0};
  std::vector<int> k{0};

  // test family
  std::vector<double> atom_radii{0.0, 0.5, 0.75, 0.9, 0.99, 0.999};
  std::vector<int> monomial_degrees{1, 2, 4};
  std::vector<int> lattice_sizes{8, 32, 128};
  std::vector<double> lattice_deltas{0.25, 0.5, 1.0};

  // quadrature resolutions (sphere sizes are per-rule size requests; the
  // product construction rounds them for n >= 2)
  // sphere sizes are chosen so that doubling actually refines the n >= 2
  // product rule (its per-axis order is ~size^(1/(2n-1)))
  int ball_radial = 12;      // outer norm rule, radial nodes
  int ball_sphere = 32;      // outer norm rule, sphere size
  int tent_radial = 4;       // area-integral inner rule
  int tent_sphere = 27;
  int centers_radial = 2;    // maximal candidate-center shells
  int centers_angular = 6;   // directions per shell
  int maximal_radial = 2;    // maximal inner ball rule
  int maximal_sphere = 27;
  int segments = 6;          // g-function composite rule, points per dyadic level
  int depth = 40;            // dyadic levels
  int sandwich_stride = 8;   // pointwise sandwich sampled every stride-th node

  std::uint64_t seed = 42;

  // verdict policy (artifact tolerances; the equivalences fix no explicit constants)
  double band_spread_max = 1e3;
  double trend_slope_max = 0.1;
  double convergence_rel = 0.005;
  double boundary_cap = 0.999;

  std::string out_dir = "out";
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Names of the runnable experiments, in canonical order.
const std::vector<std::string>& experiment_names();

/// All keys accepted in a config section or as an override.
const std::vector<std::string>& valid_config_keys();

/// Parse the flat sections/key=value config text. Returns one config per
/// section; a [global] section applies to all experiments. Unknown sections
/// or keys raise ConfigError listing the valid choices.
std::map<std::string, ExperimentConfig> parse_config_text(const std::string& text);
std::map<std::string, ExperimentConfig> parse_config_file(const std::string& path);

/// Apply a single "key=value" override.
void apply_override(ExperimentConfig& config, const std::string& key_value);

/// Default desk-scale config for an experiment.
ExperimentConfig default_config(const std::string& experiment);

/// Precondition violations over the config's grid (empty means valid).
std::vector<std::string> validate_config(const ExperimentConfig& config);

}  // namespace bergman

#endif
