#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qclt {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int dim = 24;
  int pairs = 4;            // random state pairs per group
  int threads = 0;
  double grid_extent = 6.0;
  int grid_points = 192;
  // Test hook: emulate a sign error in the odd Laguerre branches; the
  // fock-vs-char oracle group must catch it.
  bool corrupt_laguerre_sign = false;
};

struct VerifyGroup {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst-case residual seen by the group
  std::string detail;
};

struct VerifySummary {
  std::vector<VerifyGroup> groups;
  bool all_pass = false;
};

VerifySummary run_verify_battery(const VerifyOptions& opt);

}  // namespace qclt
