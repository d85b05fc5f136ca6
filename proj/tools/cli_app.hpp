#ifndef REDEILAB_CLI_APP_HPP
#define REDEILAB_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace redeilab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 ok, 1 assertion failure, 2 usage error, 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redeilab::cli

#endif
