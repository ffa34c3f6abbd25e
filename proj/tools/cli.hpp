#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seqlimit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain, parse or cap errors
inline constexpr int kExitUsage = 2;

/// Runs one `seqlimit` invocation. `args` excludes the program name. The
/// output document goes to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqlimit::cli
