#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lamplight {

/// Malformed group expression. `offset()` is the byte offset of the failure.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// An element, measure or mode does not belong to the group it is used with.
class SpecMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numeric argument is outside the documented range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested tolerance cannot be certified within the configured limits.
class ToleranceUnachievable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size or search limit would be exceeded.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lamplight
