#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistcert {

/// Violated precondition or malformed argument.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation of a rational function at a zero of its denominator.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Text input that does not match the grammar. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace twistcert
