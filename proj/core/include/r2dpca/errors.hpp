#pragma once

#include <stdexcept>
#include <string>

namespace r2dpca {

// Error taxonomy shared by the whole library. The CLI maps these onto
// exit codes: usage/config -> 1, data -> 2, numerical -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

class LoadError : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

} // namespace r2dpca
