#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cordic {

// Value outside a representable range (fixed-point overflow on conversion,
// quotient overflow, argument beyond a convergence region).
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

// Mathematically undefined input (atanh(1), ln of a non-positive number, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller broke an API contract: mismatched formats, bad shift count,
// unknown function or variant name.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the byte offset where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace cordic
