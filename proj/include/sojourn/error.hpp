#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sojourn {

enum class ErrorCode {
    NonFinite,
    SingularMatrix,
    NotSorted,
    Overlapping,
    Degenerate,
    Empty,
    InvalidRate,
    InvalidArgument,
    DegenerateSystem,
    Unsupported,
    UnsupportedScheme,
    BandTooNarrow,
    Config,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::Overlapping: return "Overlapping";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UnsupportedScheme: return "UnsupportedScheme";
    case ErrorCode::BandTooNarrow: return "BandTooNarrow";
    case ErrorCode::Config: return "Config";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

    ErrorCode code() const noexcept { return code_; }
    /// The message without the code prefix.
    const std::string& message() const noexcept { return message_; }

    /// True for failures of the numerical engines (as opposed to bad input).
    bool numerical() const noexcept {
        return code_ == ErrorCode::NonFinite || code_ == ErrorCode::SingularMatrix ||
               code_ == ErrorCode::DegenerateSystem;
    }

private:
    ErrorCode code_;
    std::string message_;
};

} // namespace sojourn
