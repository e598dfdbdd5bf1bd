// End-to-end contract of the command-line tool: exit codes, CSV schema,
// determinism of written artifacts. Drives the real binary via std::system.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& args, const std::string& log) {
  const std::string cmd = std::string(CLI_BIN) + " " + args + " >" + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "bergman_cli_contract";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string log = (dir / "log.txt").string();
  const std::string out1 = (dir / "out1").string();
  const std::string out2 = (dir / "out2").string();

  check(run("list", log) == 0, "list exits 0");
  {
    const std::string text = slurp(log);
    check(text.find("counterexample_check") != std::string::npos &&
              text.find("tent_equivalence") != std::string::npos,
          "list names the experiments");
    check(text.find("convergence_rel") != std::string::npos, "list names the config keys");
  }

  check(run("oracle", log) == 0, "oracle exits 0");
  check(slurp(log).find("sinh^2(1)") != std::string::npos, "oracle prints derivations");

  check(run("validate --experiment counterexample_check", log) == 0,
        "validate accepts the default config");
  check(run("validate --experiment gfunction_equivalence --override q=1", log) == 1,
        "validate rejects a bad grid with exit 1");

  check(run("run --experiment bogus_experiment --out " + out1, log) == 1,
        "unknown experiment exits 1");
  check(slurp(log).find("choose one of") != std::string::npos,
        "unknown experiment lists the choices");

  check(run("run --experiment counterexample_check --override gama=1.0 --out " + out1,
            log) == 1,
        "unknown override key exits 1");
  check(slurp(log).find("valid keys") != std::string::npos,
        "unknown override lists the valid keys");

  check(run("run --experiment counterexample_check --out " + out1, log) == 0,
        "passing run exits 0");
  const std::string csv1 = slurp(out1 + "/counterexample_check.csv");
  check(csv1.rfind("# seed=42", 0) == 0, "csv starts with the seed comment");
  check(csv1.find("experiment,n,p,q,alpha,gamma,k,function,metric,value,converged") !=
            std::string::npos,
        "csv carries the fixed header");
  check(!fs::exists(out1 + "/counterexample_check.csv.tmp"), "no temp file left behind");

  check(run("run --experiment counterexample_check --out " + out2, log) == 0,
        "second identical run exits 0");
  check(csv1 == slurp(out2 + "/counterexample_check.csv"),
        "identical seed gives bit-identical csv");
  check(run("run --experiment counterexample_check --seed 7 --out " + out2, log) == 0,
        "seeded run exits 0");
  check(slurp(out2 + "/counterexample_check.csv").rfind("# seed=7", 0) == 0,
        "seed override lands in the csv");

  // impossible tolerance forces a verdict failure -> exit 2
  check(run("run --experiment estimate_suite --override trend_slope_max=1e-12 --out " +
                out2,
            log) == 2,
        "failing verdict exits 2");
  check(slurp(out2 + "/estimate_suite.summary.txt").find("overall: FAIL") !=
            std::string::npos,
        "failing summary is still written");

  // a config file drives the same machinery
  const std::string cfg_path = (dir / "sweep.cfg").string();
  {
    std::ofstream cfg(cfg_path);
    cfg << "[global]\nseed = 5\n[counterexample_check]\nsegments = 7\n";
  }
  check(run("run --config " + cfg_path + " --out " + out2, log) == 0,
        "config-file run exits 0");
  check(slurp(out2 + "/counterexample_check.csv").rfind("# seed=5", 0) == 0,
        "config-file seed is honored");

  std::cout << (failures == 0 ? "ALL OK\n" : "FAILURES\n");
  return failures == 0 ? 0 : 1;
}
