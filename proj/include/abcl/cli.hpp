#pragma once

#include <ostream>

namespace abcl {

/* Exit codes: 0 ok, 1 domain error, 2 parse error. */
int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

} // namespace abcl
