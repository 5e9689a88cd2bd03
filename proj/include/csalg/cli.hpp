#pragma once

#include <iosfwd>

namespace csalg {

// Exit codes: 0 ok, 1 a check failed, 2 parse or usage error, 3 domain error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csalg
