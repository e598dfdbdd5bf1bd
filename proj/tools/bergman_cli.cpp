// Command-line driver: run experiments, validate configs, list what exists,
// dump the analytic oracle table.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/experiments.hpp"
#include "bergman/oracles.hpp"
#include "bergman/report.hpp"

namespace {

struct Options {
  std::string experiment;
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

/// Resolve the configs to act on: the named experiment (config section or
/// defaults), or every section of the config file.
std::map<std::string, bergman::ExperimentConfig> select_configs(const Options& opt) {
  std::map<std::string, bergman::ExperimentConfig> from_file;
  if (!opt.config_path.empty()) from_file = bergman::parse_config_file(opt.config_path);

  std::map<std::string, bergman::ExperimentConfig> picked;
  if (!opt.experiment.empty()) {
    const auto& names = bergman::experiment_names();
    if (std::find(names.begin(), names.end(), opt.experiment) == names.end()) {
      std::string msg = "unknown experiment '" + opt.experiment + "'; choose one of:";
      for (const auto& n : names) msg += " " + n;
      throw bergman::ConfigError(msg);
    }
    auto it = from_file.find(opt.experiment);
    picked[opt.experiment] =
        it != from_file.end() ? it->second : bergman::default_config(opt.experiment);
  } else if (!from_file.empty()) {
    picked = std::move(from_file);
  } else {
    throw bergman::ConfigError("nothing selected: pass --experiment and/or --config");
  }

  for (auto& [name, cfg] : picked) {
    if (opt.seed_set) cfg.seed = opt.seed;
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    for (const auto& kv : opt.overrides) bergman::apply_override(cfg, kv);
  }
  return picked;
}

int cmd_run(const Options& opt) {
  const auto configs = select_configs(opt);
  bool any_fail = false;
  for (const auto& [name, cfg] : configs) {
    const bergman::ExperimentReport rep = bergman::run_experiment(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    const std::string base = cfg.out_dir + "/" + name;
    bergman::write_file_atomic(base + ".csv", bergman::to_csv(rep));
    const std::string summary = bergman::to_summary(rep);
    bergman::write_file_atomic(base + ".summary.txt", summary);
    std::cout << summary;
    std::cout << "wrote " << base << ".csv and " << base << ".summary.txt\n";
    if (!rep.pass()) any_fail = true;
  }
  return any_fail ? 2 : 0;
}

int cmd_validate(const Options& opt) {
  const auto configs = select_configs(opt);
  bool bad = false;
  for (const auto& [name, cfg] : configs) {
    const auto violations = bergman::validate_cells(cfg);
    if (violations.empty()) {
      std::cout << name << ": ok\n";
    } else {
      bad = true;
      std::cout << name << ": invalid\n";
      for (const auto& v : violations) std::cout << "  " << v << "\n";
    }
  }
  return bad ? 1 : 0;
}

int cmd_list() {
  std::cout << "experiments:\n";
  for (const auto& n : bergman::experiment_names()) std::cout << "  " << n << "\n";
  std::cout << "config keys:\n";
  for (const auto& k : bergman::valid_config_keys()) std::cout << "  " << k << "\n";
  return 0;
}

int cmd_oracle() {
  for (const auto& row : bergman::oracles::oracle_table())
    std::cout << row.name << " = " << bergman::format_real(row.value) << "  # "
              << row.derivation << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational toolkit for Bergman-space function norms on the unit ball"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--experiment", opt.experiment, "experiment name");
    sub->add_option("--config", opt.config_path, "config file (sections of key=value lines)");
    sub->add_option("--override", opt.overrides, "key=value override, repeatable");
    sub->add_option("--seed", opt.seed, "RNG seed (default 42)")
        ->each([&](const std::string&) { opt.seed_set = true; });
    if (with_out) sub->add_option("--out", opt.out_dir, "output directory (default 'out')");
  };

  CLI::App* run = app.add_subcommand("run", "run an experiment and write csv + summary");
  add_common(run, true);
  CLI::App* validate =
      app.add_subcommand("validate", "check a config without running any numerics");
  add_common(validate, false);
  app.add_subcommand("list", "list experiments and config keys");
  app.add_subcommand("oracle", "print the built-in analytic oracle values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(opt);
    if (validate->parsed()) return cmd_validate(opt);
    if (app.get_subcommand("list")->parsed()) return cmd_list();
    if (app.get_subcommand("oracle")->parsed()) return cmd_oracle();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
