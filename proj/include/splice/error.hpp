#pragma once

#include <stdexcept>
#include <string>

namespace splice {

/// An argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed diagram text. `where` is a JSON-pointer-like location, possibly empty.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string where = {})
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Two arrowheads whose multiplicities do not match the multiplicities the
/// opposite diagram would induce on them.
class SpliceCompatibilityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An internal cross-check failed. Never caught inside the library.
class InvariantFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace splice
