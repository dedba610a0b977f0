#pragma once

namespace gdisc {

// Command-line front end.  Subcommands: gen, run, verify, sweep, oracle.
// Returns the process exit code: 0 on success, 1 on usage or input errors,
// 2 when an algorithm reports infeasibility / search failure or a
// verification claim fails.
int run_cli(int argc, char** argv);

}  // namespace gdisc
