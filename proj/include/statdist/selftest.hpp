#pragma once

#include <cstdint>
#include <iosfwd>

namespace statdist {

// Runs the built-in invariant suite (state normalization, equi-diagonal
// residuals, protocol cascade identities, bound checks, report round trips)
// printing one "PASS name" / "FAIL name detail" line per invariant. Returns
// the number of failures; the CLI maps nonzero to exit code 1.
int run_selftest(std::ostream& out, std::uint64_t seed);

}  // namespace statdist
