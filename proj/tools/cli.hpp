#pragma once

#include <iosfwd>

namespace lagns::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // run failed, or a check did not pass
inline constexpr int kUsage = 2;
inline constexpr int kConfig = 3;

/// Entry point of the `lagns` tool. Errors go to `err` as one JSON line:
///   {"error":"<kind>","message":"...","line":N}
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lagns::cli
