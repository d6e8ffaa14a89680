#pragma once

#include <stdexcept>
#include <string>

namespace mscvrp {

// Malformed or incomplete instance/solution file.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Syntactically valid file using a feature the solver does not support.
class UnsupportedFormatError : public std::runtime_error {
public:
    explicit UnsupportedFormatError(const std::string& what) : std::runtime_error(what) {}
};

// Instance that cannot be served by any solution (e.g. a demand above Q).
class InfeasibleInstanceError : public std::runtime_error {
public:
    explicit InfeasibleInstanceError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Statistical routine invoked with too little data.
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mscvrp
