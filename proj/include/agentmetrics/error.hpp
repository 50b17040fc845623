#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agentmetrics {

enum class ErrorKind {
    EmptySlice,
    InvalidInput,
    NoSuccesses,
    DegenerateBaseline,
    DivideByZero,
    CalibrationError,
    DegenerateData,
    IncompleteGrid,
    SchemaError,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every recoverable failure in the library.
/// The kind drives CLI exit codes; the message names the offending input.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace agentmetrics
