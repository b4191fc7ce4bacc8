#pragma once

namespace pm {

// Entry point behind the `pm` binary. Exit codes: 0 success, 1 validation or
// runtime failure, 2 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace pm
