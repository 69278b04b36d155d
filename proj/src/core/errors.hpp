#pragma once

#include <stdexcept>
#include <string>

namespace sgikit {

// Error categories map onto the C API status codes (and CLI exit codes).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0, int col = 0)
        : Error(format(msg, line, col)), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    static std::string format(const std::string& msg, int line, int col) {
        if (line <= 0) return msg;
        return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
    }
    int line_;
    int col_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Raised when a computation exceeds its configured step budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Raised when a structure cannot yield any informative output.
class DegenerateError : public Error {
public:
    using Error::Error;
};

} // namespace sgikit
