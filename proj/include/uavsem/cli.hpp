#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace uavsem {

// Entry point of the `uavsem` tool. Returns the process exit code; normal
// output goes to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace uavsem
