#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twistbench::cli {

// Runs one invocation; args excludes the program name. Returns the exit code:
// 0 success, 1 invalid object, 2 parse or option error, 3 unsupported, 4 cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistbench::cli
