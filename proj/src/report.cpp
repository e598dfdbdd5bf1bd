#include "bergman/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bergman {

bool ExperimentReport::pass() const {
  for (const Verdict& v : verdicts)
    if (!v.pass) return false;
  return true;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "# seed=" << report.seed << "\n";
  os << "experiment,n,p,q,alpha,gamma,k,function,metric,value,converged\n";
  for (const ReportRow& r : report.rows) {
    os << report.experiment << ',' << r.n << ',' << format_real(r.p) << ','
       << format_real(r.q) << ',' << format_real(r.alpha) << ',' << format_real(r.gamma)
       << ',' << r.k << ',' << r.function << ',' << r.metric << ','
       << format_real(r.value) << ',' << (r.converged ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string to_summary(const ExperimentReport& report) {
  std::ostringstream os;
  os << "experiment: " << report.experiment << "\n";
  os << "seed: " << report.seed << "\n";
  os << "rows: " << report.rows.size() << "\n";
  std::size_t unconverged = 0;
  for (const ReportRow& r : report.rows)
    if (!r.converged) ++unconverged;
  os << "unconverged rows (excluded from verdicts): " << unconverged << "\n";
  for (const std::string& note : report.notes) os << "note: " << note << "\n";
  os << "verdicts:\n";
  for (const Verdict& v : report.verdicts) {
    os << "  [" << (v.pass ? "PASS" : "FAIL") << "] " << v.name
       << "  statistic=" << format_real(v.statistic)
       << "  threshold=" << format_real(v.threshold);
    if (!v.note.empty()) os << "  (" << v.note << ")";
    os << "\n";
  }
  os << "overall: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

}  // namespace bergman
