#pragma once

#include <stdexcept>
#include <string>

namespace textnet {

/// Base error for all recoverable failures raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (corpus records, config files, panels).
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical routine could not produce a trustworthy result.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace textnet
