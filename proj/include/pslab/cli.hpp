#pragma once

#include "pslab/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pslab {

/// Executes a validated scenario; output goes to scenario.output.path, or to `out` for "-".
void execute_scenario(const Scenario& scenario, std::ostream& out);

/// Entry point behind the pslab binary. `args` excludes the program name.
/// Exit codes: 0 success, 1 validation or usage error, 2 numerical guard error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pslab
