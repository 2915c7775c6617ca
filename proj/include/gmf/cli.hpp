#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmf::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomainError = 2;

// args excludes the program name. Series input defaults to `in` when no file is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gmf::cli
