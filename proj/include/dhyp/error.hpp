#pragma once

#include <stdexcept>
#include <string>

namespace dhyp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter sits on a pole (lower parameter at 0, -1, -2, ... or gamma argument there).
class PoleError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class TargetOutsideCone : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace dhyp
