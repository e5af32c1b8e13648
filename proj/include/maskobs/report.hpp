#pragma once

// "key: value" run reports. Keys keep insertion order; reals print with 12
// significant digits after snapping |x| < 1e-12 to zero, so reports are
// byte-stable across runs and platforms.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maskobs/algebra.hpp"

namespace maskobs {

inline constexpr int kReportVersion = 1;

std::string format_real(double x);

class RunReport {
 public:
  explicit RunReport(std::string command);

  RunReport& add(const std::string& key, const std::string& value);
  RunReport& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  RunReport& add(const std::string& key, double value);
  RunReport& add(const std::string& key, bool value);
  RunReport& add(const std::string& key, int value);
  RunReport& add(const std::string& key, std::uint64_t value);
  RunReport& add(const std::string& key, const RealVector& values);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string render() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace maskobs
