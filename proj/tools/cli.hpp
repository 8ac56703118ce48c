#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wittkit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kParseError = 2;
inline constexpr int kMathError = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wittkit::cli
