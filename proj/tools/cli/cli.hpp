#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace greenfield::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kPrecondition = 1;
inline constexpr int kParse = 2;
inline constexpr int kInternal = 3;

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace greenfield::cli
