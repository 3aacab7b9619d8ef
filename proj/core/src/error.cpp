#include "pssc/error.hpp"

namespace pssc {

std::string_view to_string(ErrorCode code) noexcept
{
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::NoRelativeDegree: return "NoRelativeDegree";
  case ErrorCode::AlphaMismatch: return "AlphaMismatch";
  case ErrorCode::SingularGB: return "SingularGB";
  case ErrorCode::UnstableBeta: return "UnstableBeta";
  case ErrorCode::UnstableTerminalLaw: return "UnstableTerminalLaw";
  case ErrorCode::TrajectoryTooShort: return "TrajectoryTooShort";
  case ErrorCode::NonBoxInputSet: return "NonBoxInputSet";
  case ErrorCode::EmptyBox: return "EmptyBox";
  case ErrorCode::ProjectionBlowup: return "ProjectionBlowup";
  case ErrorCode::NotFinitelyDetermined: return "NotFinitelyDetermined";
  case ErrorCode::IllConditioned: return "IllConditioned";
  case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
  case ErrorCode::SingularInnovation: return "SingularInnovation";
  case ErrorCode::OutOfEnvelope: return "OutOfEnvelope";
  case ErrorCode::Schema: return "Schema";
  case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

} // namespace pssc
