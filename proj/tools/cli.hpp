#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cslik::cli {

// Dispatch a full command line. Exit codes: 0 success, 1 computation error,
// 2 usage/parse error. All output goes to the provided streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cslik::cli
