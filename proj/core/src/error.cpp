#include "syncnet/error.hpp"

namespace syncnet {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotFinite: return "NotFinite";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SizeOverflow: return "SizeOverflow";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TooSmall: return "TooSmall";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::Diverged: return "Diverged";
        case ErrorCode::SubcriticalAlpha: return "SubcriticalAlpha";
        case ErrorCode::NoRealRoot: return "NoRealRoot";
        case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace syncnet
