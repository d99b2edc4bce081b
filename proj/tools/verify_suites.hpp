#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace majsim::cli {

struct VerifyOptions {
  std::string family;          // "" = suite default
  int n_lo = 0, n_hi = 0;      // 0 = suite default
  int max_n = 8;               // bound suite scope
  std::vector<double> p_grid;  // empty = suite default
  std::int64_t trials = 100;
  std::int64_t steps = 100000;  // freeze-watch horizon per instance
  std::uint64_t seed = 0;
};

/// Runs one invariant battery, printing a line per checked instance and a
/// counterexample dump on the first violation. Returns 0 on success, 2 on
/// violation. Unknown suite names throw parameter_error.
int run_verify_suite(const std::string& suite, const VerifyOptions& opt,
                     std::ostream& out);

}  // namespace majsim::cli
