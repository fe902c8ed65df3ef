#pragma once

#include <iosfwd>

namespace ltls {

/// Entry point behind the `ltls` binary; exposed so tests can drive the
/// subcommands in-process. Returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ltls
