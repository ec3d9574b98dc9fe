#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paradv::cli {

/// Environment variable selecting the worker count.
inline constexpr const char* kThreadsVariable = "PARADV_THREADS";

/// Applies kThreadsVariable if set; returns the worker count in effect.
int configure_workers();

/// Runs one invocation (args exclude the program name). Exit codes: 0 on
/// success, 2 on rejected parameters, 1 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paradv::cli
