#pragma once

#include <iosfwd>

namespace rotcav {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;    // I/O and other errors
inline constexpr int config = 2;     // bad config or command line
inline constexpr int numerical = 3;  // integration or quadrature failure
inline constexpr int partial = 4;    // results written, some points flagged undecided
}  // namespace exit_code

/// Entry point of the `rotcav` tool; output goes to `out` unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotcav
