#pragma once

#include <stdexcept>
#include <string>

namespace rcp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or degenerate input (bad file, |P| = 0, d = 0, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// An exponential parameter exceeds the configured limit.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A solver was called outside the instance class it decides.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

// Broken internal invariant; reaching this is a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace rcp
