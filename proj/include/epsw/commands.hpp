#pragma once

namespace epsw {

// Full command-line entry point: parses argv, runs one command, prints the
// JSON report (and CSV artifacts when --out is given). Returns the process
// exit code: 0 success, 2 negative verification verdict, 1 error.
int dispatch(int argc, const char* const* argv);

}  // namespace epsw
