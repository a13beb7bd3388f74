#ifndef CACHESCHED_ERRORS_HPP
#define CACHESCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cachesched {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arguments or malformed in-memory data.
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// Malformed instance/plan/spec document. Names the first offending field.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Problem too large for an exhaustive method.
class SizeError : public Error {
public:
    explicit SizeError(const std::string& msg) : Error(msg) {}
};

// Numerical failure or iteration cap exceeded inside a solver.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

// File read/write failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace cachesched

#endif
