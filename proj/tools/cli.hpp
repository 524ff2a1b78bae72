#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace desmoke::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kProcessing = 4 };

/// Runs one `desmoke` invocation; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace desmoke::cli
