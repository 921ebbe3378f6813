#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdt {

enum class ErrorKind {
    UnknownPort,
    PortSaturated,
    SelfBond,
    NoSuchBond,
    WrongAdicity,
    BoundaryCrossed,
    UnknownElement,
    NotADyad,
    NotASet,
    CapExceeded,
    IllFormed,
    SchemaError,
};

/// Domain-rule failure (bad precondition, impermissible combination, ...).
class DomainError : public std::runtime_error {
public:
    DomainError(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

enum class ViolationKind { BadArity, OverSaturated, DanglingRef, SelfBond };

struct Violation {
    ViolationKind kind;
    std::string detail;
};

std::string to_string(ViolationKind k);

/// Thrown when untrusted input decodes to a structurally invalid molecule.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// 1-based position of a token inside parser input.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;
};

enum class ParseErrorKind { Syntax, ArityMismatch, DuplicateId, UnknownId, PortReuse };

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, SourceSpan span, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind), span_(span) {}

    ParseErrorKind kind() const { return kind_; }
    const SourceSpan& span() const { return span_; }

private:
    ParseErrorKind kind_;
    SourceSpan span_;
};

} // namespace mdt
