#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqnn {

// Bad experiment configuration or command-line usage.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data that cannot be used: unreadable files, unmatched bond lengths,
// inconsistent qubit counts.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed .ham or config text. Carries the 1-based line number.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Non-finite objective values, eigensolver breakdown and similar.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hqnn
