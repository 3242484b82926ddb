#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "summing/optim.hpp"

namespace summing::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitEstimation = 3;
inline constexpr int kExitCheckFailed = 4;

// Parses flags, runs the configured command and writes the report to --out
// (or `out`).  Diagnostics go to `err`.  Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// One brute-force confirmation of a closed-form oracle.
struct OracleCheck {
  std::string name;
  double brute = 0.0;
  double oracle = 0.0;
  double relative_error = 0.0;
  bool pass = false;
};

// Grid and sampling checks of the rank-one, Hilbert, l_inf-domain pi_1 and
// embedding-constant oracles.  A check passes when the brute-force value is
// within `tolerance` (relative) of the oracle it targets.
std::vector<OracleCheck> validate_oracles(std::uint64_t seed, double tolerance);

}  // namespace summing::cli
