#ifndef CG_SELFTEST_HPP
#define CG_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cg/parse.hpp"

namespace cg {

// In-process property suites, one per module.  Deterministic in the seed;
// every property reports how many checks ran and how many failed.
struct PropertyResult {
  std::string name;
  unsigned checks = 0;
  unsigned failures = 0;
};

struct SuiteResult {
  std::string name;
  std::vector<PropertyResult> properties;

  bool ok() const {
    for (const auto& p : properties)
      if (p.failures) return false;
    return true;
  }
};

std::vector<std::string> selftest_suite_names();

// Runs one named suite ("all" runs every suite) with roughly n iterations
// per property.  Unknown names raise UnknownSuite.
std::vector<SuiteResult> run_selftest(const std::string& suite,
                                      std::uint64_t seed, unsigned n);

CommandResult cmd_selftest(const Session& s, const std::string& suite,
                           unsigned n);

}  // namespace cg

#endif
