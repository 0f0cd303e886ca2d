#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace satotate::cli {

inline constexpr const char* kToolVersion = "0.3.0";

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics and usage to `err`. Returns 0 on success, 2 on invalid input,
/// 3 when a computation fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace satotate::cli
