#pragma once

#include <string>
#include <vector>

namespace isi {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Invariant suite behind `isi verify`. Quick covers L <= 3; full covers
/// L <= 6 plus Monte Carlo checks.
std::vector<CheckResult> run_verification(bool full, int threads = 1);

}  // namespace isi
