#pragma once

#include <stdexcept>
#include <string>

namespace bratteli {

enum class ErrorKind {
    SyntaxError,
    UnknownLetter,
    EmptyRule,
    NotPrimitive,
    PeriodicDetected,
    SingularSystem,
    NoRootAboveOne,
    FieldMismatch,
    DivisionByZero,
    IllegalCollarProduced,
    UnpairedExtreme,
    IncompatibleHorizontal,
    BadPath,
    BadFormat,
    Io,
};

const char* error_kind_name(ErrorKind kind);

// All library failures are reported through this one exception type; `kind()`
// is what callers (and the CLI exit-status mapping) dispatch on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace bratteli
