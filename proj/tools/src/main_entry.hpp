#pragma once

#include <ostream>

namespace shiftlab::cli {

/// Parses arguments, runs one command and writes its files. Returns the process exit code:
/// 0 success, 1 other failures, 2 validation errors, 3 numerical failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftlab::cli
