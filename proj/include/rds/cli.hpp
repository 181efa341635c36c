#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rds {

/// Entry point for the `rdskit` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on domain or I/O errors, 2 on usage errors.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rds
