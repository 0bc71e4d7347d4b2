#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

// Precondition violations on caller-supplied arguments.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input data that is well-formed but inconsistent (e.g. an incomplete prime list).
class IncorrectInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A request that exceeds a configured resource limit (memory budget, brute-force cap).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Broken internal invariant. Always a bug in this library.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace moebius
