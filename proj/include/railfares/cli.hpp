#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace railfares::cli {

/// Runs the `railfares` command line. `args` excludes the program name.
/// Returns 0 on success, 1 on data or validation errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace railfares::cli
