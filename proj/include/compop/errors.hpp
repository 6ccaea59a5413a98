#pragma once

#include <stdexcept>
#include <string>

namespace compop {

// A lazy enumeration would exceed the configured point budget.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A point does not belong to the space it was used with.
class ForeignPointError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SpaceMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace compop
