#pragma once

namespace thzchan {

/// Command-line entry point. Exit codes: 0 success, 2 usage or validation
/// error, 3 data-file error.
int run_cli(int argc, const char* const* argv);

}  // namespace thzchan
