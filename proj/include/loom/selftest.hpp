#pragma once

#include <ostream>

namespace loom {

// Seeded digest of every module's invariant suite. Logs one line per block
// and returns the number of failed blocks (0 = all invariants hold).
int run_selftest(unsigned long seed, std::ostream& log);

} // namespace loom
