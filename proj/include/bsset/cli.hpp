#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bsset::cli {

// Exit codes.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;      // a verification verdict failed
inline constexpr int exit_input = 2;     // unusable input, hypotheses not met, budget exceeded
inline constexpr int exit_internal = 3;  // internal consistency check failed

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsset::cli
