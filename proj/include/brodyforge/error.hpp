#pragma once

#include <stdexcept>
#include <string>

namespace brodyforge {

enum class ErrorKind {
    validation,       // bad inputs, violated admissibility, unknown config keys
    tolerance,        // a numeric acceptance threshold was exceeded
    io,               // file system failures
    invalid_argument, // misuse of an API (dimension mismatch, out of range, pole hit)
    overflow,         // value left the representable range of binary64
    internal          // unexpected state; a bug
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::tolerance: return "tolerance";
    case ErrorKind::io: return "io";
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::overflow: return "overflow";
    default: return "internal";
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::string detail_json = {})
        : std::runtime_error(std::move(message)), kind_(kind), detail_(std::move(detail_json)) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Optional machine-readable payload (a JSON value as text), empty if none.
    const std::string& detail_json() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message, std::string detail_json = {}) {
    throw Error(kind, std::move(message), std::move(detail_json));
}

} // namespace brodyforge
