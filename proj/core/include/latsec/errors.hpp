#pragma once

#include <stdexcept>

namespace latsec {

/// Bad user input: invalid dimensions, malformed bit strings, a lattice pair
/// that is not nested, an index that is not a power of two. CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation refused to run because it would exceed a configured resource
/// cap (lattice point enumeration budget). CLI exit code 3.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace latsec
