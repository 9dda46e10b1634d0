#pragma once

#include <iosfwd>

namespace bmf {

/// Quick built-in verification of the library's worked examples (exact
/// identities and closed forms; no Monte-Carlo). Prints one line per check
/// and returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace bmf
