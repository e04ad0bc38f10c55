#pragma once

#include <ostream>

/// Runs the fast invariant suite and prints one row per check. True if every row passes.
bool run_selftest(std::ostream& out);
