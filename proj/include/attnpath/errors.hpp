#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace attnpath {

/// Bad user input: malformed files, violated invariants, bad flags.
/// The CLI maps this family to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed line in a line-oriented input file.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace attnpath
