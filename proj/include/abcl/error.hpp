#pragma once

#include <stdexcept>
#include <string>

namespace abcl {

/* Input outside the mathematical domain of an operation (non-squarefree d,
 * ramified prime where an unramified one is required, ...). */
class domain_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/* Malformed textual input (field spec, ideal spec). */
class parse_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/* A p-adic computation could not certify its result at the requested
 * precision. Never silently truncated. */
class precision_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace abcl
