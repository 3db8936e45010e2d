#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace syncnet {

enum class ErrorCode {
    NotSquare,
    NotSymmetric,
    NotFinite,
    NoConvergence,
    SizeOverflow,
    DimensionMismatch,
    TooSmall,
    Disconnected,
    InvalidGraph,
    InvalidParams,
    NotPositiveDefinite,
    Diverged,
    SubcriticalAlpha,
    NoRealRoot,
    WindowOutOfRange,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// Numerical failures (as opposed to bad input) get a distinct exit status in the CLI.
constexpr bool is_numerical_failure(ErrorCode code) noexcept {
    return code == ErrorCode::Diverged || code == ErrorCode::NoConvergence ||
           code == ErrorCode::NoRealRoot;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace syncnet
