#pragma once

#include <ostream>
#include <vector>

#include "sigmaq/estimator.hpp"

namespace sigmaq::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitConfig = 2,
  kExitInconclusive = 3,
};

/// 0 when every report passes, 1 on any FAIL, 3 on INCONCLUSIVE without FAIL.
int exit_code_for(const std::vector<IdentityReport>& reports);

/// Entry point of the `sigmaq` tool: subcommands verify, price, azema and
/// simulate. Reports go to --out or `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigmaq::cli
