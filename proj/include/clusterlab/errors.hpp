#pragma once

#include <stdexcept>
#include <string>

namespace clusterlab {

// Caller passed something invalid (out-of-range vertex, zero divisor, ...).
struct ArgumentError : std::runtime_error {
    explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact division requested but the remainder is nonzero.
struct DivisibilityError : std::runtime_error {
    explicit DivisibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured budget (seeds, submodule enumeration, memory) was exceeded.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A search over a generated pool ran out of candidates (infinite type,
// dimension bound too small).
struct SearchBoundError : std::runtime_error {
    explicit SearchBoundError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal consistency audit failed; signals a bug, not bad input.
struct IntegrityError : std::runtime_error {
    explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation outside its mathematical domain (tau of a projective, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

} // namespace clusterlab
