#include "maskobs/report.hpp"

#include <cmath>
#include <cstdio>

namespace maskobs {

std::string format_real(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string out = buf;
  if (out == "-0") out = "0";
  return out;
}

RunReport::RunReport(std::string command) {
  add("report_version", kReportVersion);
  add("command", std::move(command));
}

RunReport& RunReport::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
  return *this;
}

RunReport& RunReport::add(const std::string& key, double value) { return add(key, format_real(value)); }

RunReport& RunReport::add(const std::string& key, bool value) {
  return add(key, std::string(value ? "true" : "false"));
}

RunReport& RunReport::add(const std::string& key, int value) { return add(key, std::to_string(value)); }

RunReport& RunReport::add(const std::string& key, std::uint64_t value) {
  return add(key, std::to_string(value));
}

RunReport& RunReport::add(const std::string& key, const RealVector& values) {
  std::string joined;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += format_real(values(i));
  }
  return add(key, joined);
}

std::string RunReport::render() const {
  std::string out;
  for (const auto& [key, value] : entries_) out += key + ": " + value + "\n";
  return out;
}

}  // namespace maskobs
