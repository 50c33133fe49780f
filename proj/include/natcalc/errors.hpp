#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace natcalc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A term or a transition derivation needs more fresh channels than the
/// universe allows.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string &message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class UnboundIdentifier : public Error {
public:
    explicit UnboundIdentifier(const std::string &name)
        : Error("unbound identifier '" + name + "'"), name_(name)
    {
    }
    UnboundIdentifier(const std::string &name, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": unbound identifier '" + name + "'"),
          name_(name), line_(line), column_(column)
    {
    }

    const std::string &name() const noexcept { return name_; }
    /// Source position, 0 when unknown.
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string name_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

class Unrepresentable : public Error {
public:
    using Error::Error;
};

class CarrierMismatch : public Error {
public:
    using Error::Error;
};

class SilentAxiomsViolated : public Error {
public:
    using Error::Error;
};

class IncompleteStates : public Error {
public:
    using Error::Error;
};

} // namespace natcalc
