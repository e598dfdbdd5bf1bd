#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bergman/report.hpp"

using namespace bergman;

TEST_CASE("format_real round-trips doubles exactly") {
  for (double x : {1.0 / 3.0, 0.1, 1e-300, 6.02214076e23, -0.0, 123456789.123456789}) {
    const std::string s = format_real(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("to_csv emits the fixed schema") {
  ExperimentReport rep;
  rep.experiment = "demo";
  rep.seed = 99;
  rep.add_row({2, 0.5, 2.0, 1.0, 0.5, 1, "atom_r0.9", "area_norm", 1.0 / 3.0, true});
  rep.add_row({1, 2.0, 2.0, 0.0, 1.0, 0, "z1", "reference_norm", 0.1, false});
  const std::string csv = to_csv(rep);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# seed=99");
  std::getline(in, line);
  CHECK(line == "experiment,n,p,q,alpha,gamma,k,function,metric,value,converged");
  std::getline(in, line);
  CHECK(line == "demo,2,0.5,2,1,0.5,1,atom_r0.9,area_norm,0.33333333333333331,1");
  std::getline(in, line);
  CHECK(line.substr(line.size() - 2) == ",0");  // unconverged rows are flagged
}

TEST_CASE("pass() requires every verdict to pass") {
  ExperimentReport rep;
  CHECK(rep.pass());
  rep.add_verdict({"a", 0.0, 1.0, true, ""});
  CHECK(rep.pass());
  rep.add_verdict({"b", 2.0, 1.0, false, ""});
  CHECK(!rep.pass());
  const std::string summary = to_summary(rep);
  CHECK(summary.find("[PASS] a") != std::string::npos);
  CHECK(summary.find("[FAIL] b") != std::string::npos);
  CHECK(summary.find("overall: FAIL") != std::string::npos);
}

TEST_CASE("write_file_atomic leaves no temp file and overwrites") {
  const std::string dir = std::filesystem::temp_directory_path().string();
  const std::string path = dir + "/bergman_report_test.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "second");
  CHECK(!std::filesystem::exists(path + ".tmp"));
  std::remove(path.c_str());
}
