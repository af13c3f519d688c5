#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "vxa/linalg.hpp"

namespace vxa {

struct AcceptanceItem {
  std::string id;
  std::string name;
  bool pass = false;
  // Criterion documented as unattainable-as-stated (a defect in the source
  // statement, not in the artifact); reported as FAIL but non-gating.
  bool expected_fail = false;
  double seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  bool extended = false;  // include the i = 3, 4 correction solves
  int threads = 1;
  std::string data_dir;  // location of appendix_weight8.expr; default probed
};

// Runs every acceptance criterion, streaming one line per item to `progress`
// when given. Returns the full list of results.
std::vector<AcceptanceItem> run_acceptance(const AcceptanceOptions& opts,
                                           std::ostream* progress = nullptr);

std::string default_data_dir();

}  // namespace vxa
