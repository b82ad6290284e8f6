#pragma once

namespace mlse {

/// Runs the mlse command line: keygen | encode | decode | metrics |
/// experiment. Returns 0 on success, 2 on usage errors, 1 on processing
/// errors; failures go to stderr with the "mlse:" prefix.
int run_cli(int argc, const char* const* argv);

}  // namespace mlse
