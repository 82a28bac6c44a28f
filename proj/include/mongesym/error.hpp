#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mongesym {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is the 0-based byte offset of the
/// offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class ChartMismatch : public Error {
public:
    using Error::Error;
};

/// Exact evaluation is impossible (irrational power, exp/ln of a value that is
/// not a fixed point, division by zero).
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Construct outside the supported expression grammar (e.g. exp of a
/// non-polynomial argument).
class GrammarError : public Error {
public:
    using Error::Error;
};

class ProjectionError : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace mongesym
