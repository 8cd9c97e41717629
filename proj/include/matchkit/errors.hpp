#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace matchkit {

// Error taxonomy shared by the whole library. The CLI maps these to exit
// codes: parse/structural/domain -> 2, resource -> 3, soundness -> 1.

/// Mismatched ambient objects (wrong group, wrong field, wrong dimensions).
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input outside an operation's stated preconditions.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured enumeration budget would be exceeded. Never silent truncation.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A must-hold internal check failed. Signals a bug, not a math discovery.
class SoundnessError : public std::runtime_error {
public:
    explicit SoundnessError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed instance text; carries the offending position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& input, std::size_t pos, const std::string& what)
        : std::runtime_error("'" + input + "' at position " + std::to_string(pos) + ": " + what),
          position_(pos) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace matchkit
