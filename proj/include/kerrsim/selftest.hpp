#pragma once

#include <ostream>

namespace kerrsim {

/// Run the built-in property and oracle checks, printing one PASS/FAIL line per check.
/// Returns true when every check passed.
bool run_selftest(std::ostream& log);

}  // namespace kerrsim
