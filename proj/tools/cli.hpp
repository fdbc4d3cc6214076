#pragma once

#include <iosfwd>

namespace stag::cli {

// Exit codes of the command-line front-end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitLinguistic = 1;
inline constexpr int kExitConfig = 2;

// Runs one command line. Sentences are read from the positional argument,
// from --file, or from `in`, one per line.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace stag::cli
