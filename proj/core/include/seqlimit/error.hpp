#pragma once

#include <stdexcept>
#include <string>

namespace seqlimit {

/// Base class for every error raised by the library. Callers that only
/// need to distinguish library failures from programming errors catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments violate an operation's precondition (length mismatch,
/// out-of-range parameter, alphabet mismatch, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured size cap (pattern table, automaton, enumeration) was hit.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what_cap, unsigned long long cap)
        : Error(what_cap + " exceeds the configured cap of " + std::to_string(cap)),
          cap_(cap) {}

    unsigned long long cap() const noexcept { return cap_; }

private:
    unsigned long long cap_;
};

/// Malformed serialized input; carries the source name and 1-based line.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& message)
        : Error(source + ":" + std::to_string(line) + ": " + message),
          source_(source), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

/// An internal consistency check failed (e.g. a validated identity did not
/// hold). Indicates a bug, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace seqlimit
