#include <doctest.h>

#include "bergman/config.hpp"

using namespace bergman;

TEST_CASE("experiment names are canonical") {
  const auto& names = experiment_names();
  REQUIRE(names.size() == 7);
  CHECK(names[0] == "tent_equivalence");
  CHECK(names[1] == "gfunction_equivalence");
  CHECK(names[2] == "besov_equivalence");
  CHECK(names[3] == "weak_type_check");
  CHECK(names[4] == "estimate_suite");
  CHECK(names[5] == "counterexample_check");
  CHECK(names[6] == "atomic_bound_check");
}

TEST_CASE("parse_config_text: sections, global inheritance, comments") {
  const std::string text =
      "# comment line\n"
      "[global]\n"
      "seed = 7\n"
      "ball_radial = 10   # trailing comment\n"
      "\n"
      "[tent_equivalence]\n"
      "p = 0.5, 2\n"
      "n = 1\n"
      "[counterexample_check]\n"
      "segments = 9\n";
  const auto configs = parse_config_text(text);
  REQUIRE(configs.count("tent_equivalence") == 1);
  REQUIRE(configs.count("counterexample_check") == 1);
  const auto& tent = configs.at("tent_equivalence");
  CHECK(tent.seed == 7);
  CHECK(tent.ball_radial == 10);
  CHECK(tent.p == std::vector<double>{0.5, 2.0});
  CHECK(tent.n == std::vector<int>{1});
  const auto& cx = configs.at("counterexample_check");
  CHECK(cx.seed == 7);
  CHECK(cx.segments == 9);
  CHECK(cx.name == "counterexample_check");
}

TEST_CASE("global-only config applies to every experiment") {
  const auto configs = parse_config_text("[global]\nseed = 9\n");
  CHECK(configs.size() == experiment_names().size());
  for (const auto& [name, cfg] : configs) CHECK(cfg.seed == 9);
}

TEST_CASE("parse errors are specific") {
  CHECK_THROWS_WITH_AS(parse_config_text("[nonsense]\n"),
                       doctest::Contains("unknown section"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("p 2\n"),
                       doctest::Contains("expected key=value"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("[tent_equivalence]\ngama = 1\n"),
                       doctest::Contains("valid keys"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("[tent_equivalence]\nn = 1.5\n"),
                       doctest::Contains("integer"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("[tent_equivalence]\np = abc\n"),
                       doctest::Contains("invalid number"), ConfigError);
}

TEST_CASE("apply_override mirrors the config keys") {
  ExperimentConfig cfg = default_config("tent_equivalence");
  apply_override(cfg, "gamma = 0.25, 0.75");
  CHECK(cfg.gamma == std::vector<double>{0.25, 0.75});
  apply_override(cfg, "convergence_rel=0.01");
  CHECK(cfg.convergence_rel == 0.01);
  CHECK_THROWS_AS(apply_override(cfg, "no_equals_sign"), ConfigError);
  CHECK_THROWS_WITH_AS(apply_override(cfg, "gama=1.0"), doctest::Contains("valid keys"),
                       ConfigError);
}

TEST_CASE("default configs match the declared sweep grids") {
  const auto tent = default_config("tent_equivalence");
  CHECK(tent.p == std::vector<double>{0.5, 1.0, 2.0, 4.0});
  CHECK(tent.q == std::vector<double>{1.0, 2.0});
  CHECK(tent.n == std::vector<int>{1, 2});
  CHECK(tent.alpha == std::vector<double>{0.0, 1.0});
  CHECK(tent.gamma == std::vector<double>{0.5, 1.0});
  CHECK(tent.seed == 42);

  const auto gf = default_config("gfunction_equivalence");
  CHECK(gf.q == std::vector<double>{2.0});

  const auto besov = default_config("besov_equivalence");
  CHECK(besov.k == std::vector<int>{0, 1});

  CHECK_THROWS_AS(default_config("bogus"), ConfigError);
}

TEST_CASE("validate_config flags bad values") {
  ExperimentConfig cfg = default_config("tent_equivalence");
  CHECK(validate_config(cfg).empty());
  cfg.gamma = {-1.0};
  cfg.atom_radii = {1.0};
  cfg.ball_radial = 0;
  const auto errors = validate_config(cfg);
  CHECK(errors.size() >= 3);
}
