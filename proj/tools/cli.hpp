#pragma once

#include <string>
#include <vector>

namespace pathcast::cli {

/// Entry point of the pathcast tool. `args` excludes the program name.
/// Returns the process exit status: 0 on success, 2 on usage errors,
/// 1 on runtime failures.
int run(const std::vector<std::string>& args);

}  // namespace pathcast::cli
