#pragma once

#include <stdexcept>
#include <string>

namespace ntl {

/// Invalid input: malformed partitions, out-of-domain parameters. CLI exit 1.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is valid but the requested computation is too large. CLI exit 2.
class InfeasibleSize : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal post-condition failed. CLI exit 3; should never happen.
class VerificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ntl
