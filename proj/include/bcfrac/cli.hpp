#pragma once

#include <iosfwd>

namespace bcfrac::cli {

// Exit codes of the bcfrac tool.
inline constexpr int kPass = 0;
inline constexpr int kToleranceFailed = 1;
inline constexpr int kUsageError = 2;   // bad arguments or configuration
inline constexpr int kRuntimeError = 3; // I/O or numerical failure

// Entry point of the tool, with the streams injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bcfrac::cli
