#include "listhyp/error.hpp"

namespace listhyp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::BadListSize: return "BadListSize";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadBeta: return "BadBeta";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::BadLambda: return "BadLambda";
    case ErrorCode::DegenerateInstance: return "DegenerateInstance";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

}  // namespace listhyp
