#pragma once

#include <iosfwd>

namespace morphotag {

// Runs the command-line driver; returns the process exit code
// (0 ok, 2 bad input, 3 bad configuration, 4 internal error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morphotag
