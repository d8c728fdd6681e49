#ifndef GRADEROUTE_ERRORS_HPP
#define GRADEROUTE_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace graderoute {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument to an operation (bad ranges, zero counts, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// A text input could not be tokenized/converted. Carries the 1-based line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(what + " at line " + std::to_string(line)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Structurally well-formed input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Unknown node or link.
class LookupError : public Error {
public:
    using Error::Error;
};

// No route exists for a requested demand pair.
class RoutingError : public Error {
public:
    using Error::Error;
};

// A link's offered load reached or exceeded its service capacity.
class SaturationError : public Error {
public:
    SaturationError(const std::string& what, std::uint32_t link_index)
        : Error(what), link_index_(link_index) {}
    std::uint32_t link_index() const { return link_index_; }

private:
    std::uint32_t link_index_;
};

// Filesystem-level failure (open/read/write).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace graderoute

#endif
