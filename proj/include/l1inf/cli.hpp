#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "l1inf/check.hpp"

namespace l1inf {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitBadInput = 2,
  kExitBadFlags = 3,
  kExitIoFailure = 4,
};

/// Runs one invocation. `args` excludes the program name. Data goes to
/// `out` unless an output path is given; diagnostics and stats go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The check subcommand with an explicit set of projections under test.
int cmd_check(const CheckConfig& cfg, const std::vector<NamedProjection>& projections,
              std::ostream& out, std::ostream& err);

}  // namespace l1inf
