#pragma once

#include <string>

namespace oada {

/// Runs the invariant checks on one FCIDUMP and prints a line per check.
/// Returns the number of failures.
int verify_fixture(const std::string& path, unsigned seed);

}  // namespace oada
