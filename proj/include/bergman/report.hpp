#ifndef BERGMAN_REPORT_HPP
#define BERGMAN_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bergman {

/// One measurement: a metric value for a grid cell and test function.
struct ReportRow {
  int n = 1;
  double p = 2.0;
  double q = 2.0;
  double alpha = 0.0;
  double gamma = 1.0;
  int k = 0;
  std::string function;
  std::string metric;
  double value = 0.0;
  bool converged = true;
};

struct Verdict {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct ExperimentReport {
  std::string experiment;
  std::uint64_t seed = 42;
  std::vector<ReportRow> rows;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;

  bool pass() const;
  void add_row(ReportRow row) { rows.push_back(std::move(row)); }
  void add_verdict(Verdict v) { verdicts.push_back(std::move(v)); }
};

/// Round-trip exact decimal rendering (17 significant digits).
std::string format_real(double x);

/// CSV schema: "# seed=<seed>" comment line, then the fixed header
/// experiment,n,p,q,alpha,gamma,k,function,metric,value,converged.
std::string to_csv(const ExperimentReport& report);
std::string to_summary(const ExperimentReport& report);

/// Atomic write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bergman

#endif
