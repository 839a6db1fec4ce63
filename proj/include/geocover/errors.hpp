#pragma once

#include <stdexcept>
#include <string>

namespace geocover {

// exit code 2
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// exit code 3
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// exit code 4
class VerificationMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// a solver invariant broke; never expected on valid input
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace geocover
