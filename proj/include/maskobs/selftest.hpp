#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace maskobs {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reduced-size runs of the library's invariant suites (generator basis,
/// codecs, positivity, channel duality and dilation, maskability deciders,
/// constructed maskers, no-hiding, comaskable dimension count, bit
/// commitment). Deterministic for a given seed.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 20240601);

}  // namespace maskobs
