#include <cstring>
#include <iostream>

#include "vxa/acceptance.hpp"

int main(int argc, char** argv) {
  vxa::AcceptanceOptions opts;
  opts.data_dir = vxa::default_data_dir();
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) opts.extended = true;
    if (std::strcmp(argv[i], "--data-dir") == 0 && i + 1 < argc) opts.data_dir = argv[++i];
  }
  auto items = vxa::run_acceptance(opts, &std::cout);
  int failed = 0, expected = 0;
  for (const auto& it : items) {
    if (!it.pass && it.expected_fail) ++expected;
    if (!it.pass && !it.expected_fail) ++failed;
  }
  std::cout << items.size() - failed - expected << "/" << items.size() << " acceptance items passed";
  if (expected)
    std::cout << " (" << expected << " documented-defect criteria reported failed, non-gating)";
  std::cout << "\n";
  return failed == 0 ? 0 : 1;
}
