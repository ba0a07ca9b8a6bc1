#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geocrystal {

// Division by zero in exact arithmetic. During sampled evaluation this is the
// "pole hit" signal: the caller discards the point and resamples.
class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
    explicit DivisionByZero(const std::string& where)
        : std::domain_error("division by zero: " + where) {}
};

class UnboundVariable : public std::out_of_range {
public:
    explicit UnboundVariable(const std::string& name)
        : std::out_of_range("unbound variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ConstraintConflict : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Every retry of a sampled identity test landed on a pole.
class DomainTooThin : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotSubtractionFree : public std::invalid_argument {
public:
    NotSubtractionFree(const std::string& path, const std::string& what)
        : std::invalid_argument("not subtraction-free at " + path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace geocrystal
