#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toeplitz::cli {

/// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kCheckFailed = 2;

/// args excludes the program name. CSV goes to `out` unless --out is given;
/// the JSON summary goes to --json-summary, else to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

} // namespace toeplitz::cli
