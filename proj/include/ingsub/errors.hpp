#pragma once

#include <stdexcept>
#include <string>

namespace ingsub {

// Input that violates a documented precondition. Maps to CLI exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// An iterative routine (continued fraction, rejection sampler, optimizer,
// root bracket) exhausted its budget without meeting its tolerance.
// Maps to CLI exit code 3.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem or parse failure on an input/output document. Maps to CLI
// exit code 4.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ingsub
