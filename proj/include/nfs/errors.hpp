#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nfs {

/// Raised when an operation is requested on a variant that does not support it,
/// e.g. the gradient of a piecewise-linear membership function.
class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// CSV parse failure; line and column are 1-based (column 0 means "whole line").
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        std::string msg = "line " + std::to_string(line);
        if (column != 0) msg += ", column " + std::to_string(column);
        return msg + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

/// JSON document does not match the expected schema. `path` is a JSON pointer.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace nfs
