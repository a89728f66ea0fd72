#pragma once

#include <stdexcept>
#include <string>

namespace pir {

/// Bad configuration, malformed file, or any other problem with caller-supplied data.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace pir
