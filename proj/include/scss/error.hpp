#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scss {

enum class ErrorKind {
    SyntaxError,
    CountMismatch,
    RangeError,
    NotATree,
    CoverageViolation,
    ConnectivityViolation,
    InvalidDecomposition,
    CyclicInput,
    UniverseMismatch,
    ValueBoundExceeded,
    WidthTooLarge,
    BagMismatch,
    TooManyVertices,
    TooLarge,
    InternalInconsistency,
    InvalidReducedSolution,
    InvalidGraph,
    NoApplicableEngine,
    BadParams,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (and tests) can branch on the category rather than on the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class SyntaxError : public Error {
public:
    SyntaxError(int line, const std::string& message)
        : Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace scss
